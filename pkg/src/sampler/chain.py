"""Metropolis-Hastings chains over AR(1) proposals with streamed statistics."""
from __future__ import annotations

import asyncio
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from src.config import get_tolerances
from src.exceptions import DimensionMismatchError, UnknownDirectionError
from src.sampler.acceptance import log_accept_ratio_generic, log_accept_ratio_quadratic
from src.sampler.random import RandomStream
from src.splitting import Ar1Proposal, MatrixSplitting, proposal_target
from src.target import GaussianTarget, LogDensity, exact_sample

logger = logging.getLogger(__name__)


class StartKind(str, Enum):
    EXACT = "exact"
    PROPOSAL_TARGET = "proposal_target"
    EXPLICIT = "explicit"


@dataclass(frozen=True, eq=False)
class Direction:
    """A labelled direction ``w``; the chain streams statistics of ``wᵀx``."""

    label: str
    vector: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vector, dtype=float).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ValueError(f"direction {self.label!r} has non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)


@dataclass(frozen=True, eq=False)
class ChainConfig:
    """Run length and what to record.

    ``n_steps`` counts every MH step; the first ``burn_in`` of them are
    excluded from all statistics, so ``n_steps == burn_in`` yields empty
    statistics.
    """

    n_steps: int
    burn_in: int = 0
    start: StartKind = StartKind.EXACT
    x0: Optional[np.ndarray] = None
    directions: tuple[Direction, ...] = ()
    store_trace: bool = False
    store_projections: bool = False

    def __post_init__(self) -> None:
        if self.n_steps < 0:
            raise ValueError(f"n_steps must be non-negative, got {self.n_steps}")
        if not 0 <= self.burn_in <= self.n_steps:
            raise ValueError(
                f"burn_in must lie in [0, n_steps], got {self.burn_in} for {self.n_steps}"
            )
        if (self.start == StartKind.EXPLICIT) != (self.x0 is not None):
            raise ValueError("x0 is required exactly when start is explicit")
        labels = [d.label for d in self.directions]
        if len(set(labels)) != len(labels):
            raise ValueError("direction labels must be unique")

    @property
    def n_recorded(self) -> int:
        return self.n_steps - self.burn_in


@dataclass
class DirectionStats:
    """Streamed sums for the projection series ``sₖ = wᵀxₖ``, k = burn_in..n_steps."""

    label: str
    vector: np.ndarray
    n_states: int = 0
    proj_sum: float = 0.0
    proj_sq_sum: float = 0.0
    cross_sum: float = 0.0
    first: float = 0.0
    last: float = 0.0
    sq_jump_sum: float = 0.0
    sq_jump_sq_sum: float = 0.0

    @property
    def n_jumps(self) -> int:
        return max(0, self.n_states - 1)

    def push(self, s: float) -> None:
        if self.n_states == 0:
            self.first = s
        else:
            jump = (s - self.last) ** 2
            self.sq_jump_sum += jump
            self.sq_jump_sq_sum += jump * jump
            self.cross_sum += self.last * s
        self.proj_sum += s
        self.proj_sq_sum += s * s
        self.last = s
        self.n_states += 1


@dataclass(frozen=True, eq=False)
class ChainTrace:
    """Per-step record after burn-in; ``states`` only for small dimensions."""

    steps: np.ndarray
    accepted: np.ndarray
    z: np.ndarray
    states: Optional[np.ndarray]


@dataclass(eq=False)
class ChainResult:
    """Streamed statistics of one chain.

    Moments are accumulated over the states after each post-burn-in step;
    the full covariance is kept only up to the covariance cap, otherwise only
    per-coordinate variances.
    """

    seed: int
    stream_id: int
    dim: int
    n_steps: int
    burn_in: int
    adjusted: bool
    accept_count: int = 0
    n_recorded: int = 0
    mean: np.ndarray = field(default=None, repr=False)
    m2: np.ndarray = field(default=None, repr=False)
    z_count: int = 0
    z_mean: float = 0.0
    z_m2: float = 0.0
    accept_prob_sum: float = 0.0
    directions: dict[str, DirectionStats] = field(default_factory=dict, repr=False)
    projections: dict[str, np.ndarray] = field(default_factory=dict, repr=False)
    trace: Optional[ChainTrace] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.mean is None:
            self.mean = np.zeros(self.dim)
        if self.m2 is None:
            full = self.dim <= get_tolerances().covariance_cap
            self.m2 = np.zeros((self.dim, self.dim)) if full else np.zeros(self.dim)

    @property
    def full_covariance(self) -> bool:
        return self.m2.ndim == 2

    @property
    def acceptance_rate(self) -> float:
        return self.accept_count / self.n_recorded if self.n_recorded else float("nan")

    @property
    def mean_accept_prob(self) -> float:
        return self.accept_prob_sum / self.z_count if self.z_count else float("nan")

    @property
    def z_variance(self) -> float:
        return self.z_m2 / (self.z_count - 1) if self.z_count > 1 else float("nan")

    def covariance(self) -> np.ndarray:
        if self.n_recorded < 2:
            raise ValueError("covariance needs at least two recorded states")
        cov = self.m2 / (self.n_recorded - 1)
        return cov if self.full_covariance else np.diag(cov)

    def variance(self) -> np.ndarray:
        if self.n_recorded < 2:
            raise ValueError("variance needs at least two recorded states")
        diag = np.diag(self.m2) if self.full_covariance else self.m2
        return diag / (self.n_recorded - 1)

    def direction(self, label: str) -> DirectionStats:
        try:
            return self.directions[label]
        except KeyError:
            raise UnknownDirectionError(
                f"direction {label!r} was not registered before the run"
            ) from None

    def projection(self, label: str) -> np.ndarray:
        if label in self.projections:
            return self.projections[label]
        stats = self.direction(label)
        if self.trace is not None and self.trace.states is not None:
            return self.trace.states @ stats.vector
        raise UnknownDirectionError(f"no projection trace stored for {label!r}")

    def _push_state(self, x: np.ndarray) -> None:
        self.n_recorded += 1
        delta = x - self.mean
        self.mean += delta / self.n_recorded
        if self.full_covariance:
            self.m2 += np.outer(delta, x - self.mean)
        else:
            self.m2 += delta * (x - self.mean)

    def _push_z(self, z: float) -> None:
        self.z_count += 1
        delta = z - self.z_mean
        self.z_mean += delta / self.z_count
        self.z_m2 += delta * (z - self.z_mean)
        self.accept_prob_sum += 1.0 if z >= 0 else math.exp(z)


def _initial_state(
    target: GaussianTarget,
    splitting: MatrixSplitting,
    cfg: ChainConfig,
    rng: RandomStream,
) -> np.ndarray:
    if cfg.start == StartKind.EXPLICIT:
        x = np.array(cfg.x0, dtype=float).reshape(-1)
        if x.size != target.dim:
            raise DimensionMismatchError(
                f"start vector has length {x.size}, target dimension is {target.dim}"
            )
        return x
    if cfg.start == StartKind.PROPOSAL_TARGET:
        pt = proposal_target(splitting)
        xi = rng.standard_normal(target.dim)
        return pt.mean + splitting.precision_factor.solve_factor_transpose(xi)
    return exact_sample(target, rng)


def run_chain(
    target: GaussianTarget,
    proposal: tuple[Ar1Proposal, MatrixSplitting],
    cfg: ChainConfig,
    rng: RandomStream,
    adjust: bool = True,
    log_density: Optional[LogDensity] = None,
) -> ChainResult:
    """Run one chain ``y = Gx + g + ν`` with MH accept/reject in log space.

    The quadratic acceptance ratio is used for symmetric splittings of a
    Gaussian target; a supplied ``log_density`` or a non-symmetric splitting
    switches to the generic density-ratio path. With ``adjust=False`` every
    proposal is taken (the unadjusted chain).
    """
    ar1, splitting = proposal
    if ar1.dim != target.dim or splitting.dim != target.dim:
        raise DimensionMismatchError("proposal dimension does not match the target")
    for d in cfg.directions:
        if d.vector.size != target.dim:
            raise DimensionMismatchError(
                f"direction {d.label!r} has length {d.vector.size}, expected {target.dim}"
            )
    if adjust and not splitting.convergent:
        logger.warning(
            "Proposal is not convergent (spectral radius %.6g); MH still targets π",
            splitting.radius,
        )
    quadratic = adjust and log_density is None and splitting.symmetric
    generic_density = log_density or target.as_log_density()

    result = ChainResult(
        seed=rng.seed,
        stream_id=rng.stream_id,
        dim=target.dim,
        n_steps=cfg.n_steps,
        burn_in=cfg.burn_in,
        adjusted=adjust,
        directions={d.label: DirectionStats(d.label, d.vector) for d in cfg.directions},
    )
    tol = get_tolerances()
    keep_states = cfg.store_trace and target.dim <= tol.trace_cap
    steps, accepted_flags, zs, states = [], [], [], []
    projections = {d.label: [] for d in cfg.directions} if cfg.store_projections else {}

    def record_projections(state: np.ndarray) -> None:
        for label, stats in result.directions.items():
            s = float(np.dot(stats.vector, state))
            stats.push(s)
            if cfg.store_projections:
                projections[label].append(s)

    x = _initial_state(target, splitting, cfg, rng)
    if cfg.burn_in == 0:
        record_projections(x)

    for k in range(cfg.n_steps):
        y = ar1.propose(x, rng)
        if adjust:
            if quadratic:
                z = log_accept_ratio_quadratic(target, splitting, x, y)
            else:
                z = log_accept_ratio_generic(generic_density, ar1, x, y)
            accept = rng.log_uniform() < z
        else:
            z, accept = 0.0, True
        if accept:
            x = y
        if k + 1 == cfg.burn_in:
            record_projections(x)
            continue
        if k < cfg.burn_in:
            continue

        result.accept_count += int(accept)
        if adjust:
            result._push_z(z)
        result._push_state(x)
        record_projections(x)
        if cfg.store_trace:
            steps.append(k)
            accepted_flags.append(accept)
            zs.append(z)
            if keep_states:
                states.append(x.copy())

    if cfg.store_trace:
        result.trace = ChainTrace(
            steps=np.asarray(steps, dtype=int),
            accepted=np.asarray(accepted_flags, dtype=bool),
            z=np.asarray(zs, dtype=float),
            states=np.asarray(states).reshape(-1, target.dim) if keep_states else None,
        )
    result.projections = {k: np.asarray(v) for k, v in projections.items()}
    logger.debug(
        "Chain seed=%d stream=%d finished: %d/%d accepted",
        rng.seed,
        rng.stream_id,
        result.accept_count,
        result.n_recorded,
    )
    return result


async def run_chains_async(
    target: GaussianTarget,
    proposal: tuple[Ar1Proposal, MatrixSplitting],
    cfg: ChainConfig,
    n_chains: int,
    base: RandomStream,
    adjust: bool = True,
    log_density: Optional[LogDensity] = None,
) -> list[ChainResult]:
    """Run chains concurrently in worker threads; chain k uses stream id base+k.

    The threads overlap only where numpy releases the GIL (dense products at
    large d). Diagonal or small targets spend their time in the Python step
    loop, so expect little speed-up there; the gain is not blocking the
    caller's event loop.
    """
    if n_chains < 1:
        raise ValueError(f"n_chains must be >= 1, got {n_chains}")
    tasks = [
        asyncio.to_thread(
            run_chain, target, proposal, cfg, base.substream(k), adjust, log_density
        )
        for k in range(n_chains)
    ]
    return list(await asyncio.gather(*tasks))


def run_parallel_chains(
    target: GaussianTarget,
    proposal: tuple[Ar1Proposal, MatrixSplitting],
    cfg: ChainConfig,
    n_chains: int,
    base: RandomStream,
    adjust: bool = True,
    log_density: Optional[LogDensity] = None,
) -> list[ChainResult]:
    """Blocking wrapper around :func:`run_chains_async`.

    Inside a running event loop the chains run one after another on the
    calling thread; await :func:`run_chains_async` there to keep the loop free.
    Results do not depend on which path ran.
    """
    try:
        asyncio.get_running_loop()
    except RuntimeError:
        return asyncio.run(
            run_chains_async(target, proposal, cfg, n_chains, base, adjust, log_density)
        )
    if n_chains < 1:
        raise ValueError(f"n_chains must be >= 1, got {n_chains}")
    logger.debug("Event loop already running; running %d chains in sequence", n_chains)
    return [
        run_chain(target, proposal, cfg, base.substream(k), adjust, log_density)
        for k in range(n_chains)
    ]


@dataclass(frozen=True)
class PooledResult:
    n_chains: int
    accept_count: int
    n_recorded: int
    accept_prob_sum: float
    z_count: int

    @property
    def acceptance_rate(self) -> float:
        return self.accept_count / self.n_recorded if self.n_recorded else float("nan")

    @property
    def mean_accept_prob(self) -> float:
        return self.accept_prob_sum / self.z_count if self.z_count else float("nan")


def merge_results(results: Sequence[ChainResult]) -> PooledResult:
    """Pool acceptance statistics across chains."""
    if not results:
        raise ValueError("no results to merge")
    return PooledResult(
        n_chains=len(results),
        accept_count=sum(r.accept_count for r in results),
        n_recorded=sum(r.n_recorded for r in results),
        accept_prob_sum=math.fsum(r.accept_prob_sum for r in results),
        z_count=sum(r.z_count for r in results),
    )
