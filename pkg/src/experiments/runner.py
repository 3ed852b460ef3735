"""Theory and Monte-Carlo runs over a parameter sweep."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.diagnostics import esjd, iact, lag1_correlation
from src.exceptions import DegenerateTraceError, TraceTooShortError
from src.experiments.config import ExperimentConfig, apply_sweep
from src.proposals import preconditioned_eigenvalues, resolve_preconditioner
from src.proposals.spec import build_proposal, family_from_spec, preconditioner_from_spec
from src.sampler import ChainConfig, ChainResult, Direction, RandomStream, StartKind
from src.sampler import run_parallel_chains
from src.target import GaussianTarget, build_target
from src.theory import (
    AcceptancePrediction,
    JumpPrediction,
    asymptotic_limits,
    model_from_family,
    mode_directions,
    predict_acceptance,
    predict_jump,
    scaling_exponent,
    tau_from_lambdas,
)
from src.theory.model import HmcFamily

logger = logging.getLogger(__name__)

STREAM_STRIDE = 10_000

PREDICTION_HEADER = (
    "param", "d", "mu", "sigma2", "accept_pred", "accept_limit",
    "mode", "esjd_pred", "esjd_bound",
)
SCALING_HEADER = (
    "d", "h", "L", "accept_pred", "accept_limit", "accept_rate",
    "mode", "esjd", "esjd_se", "esjd_pred", "esjd_limit",
)


def chain_header(modes: list[int]) -> tuple[str, ...]:
    """``param,chain,accept_rate`` and ``esjd_i,lag1_i,iact_i`` per mode.

    The record count, mean acceptance probability and per-mode standard
    errors follow at the end.
    """
    cols = ["param", "chain", "accept_rate"]
    for i in modes:
        cols += [f"esjd_{i}", f"lag1_{i}", f"iact_{i}"]
    cols += ["n", "mean_accept_prob"]
    cols += [f"esjd_se_{i}" for i in modes]
    return tuple(cols)


@dataclass(frozen=True, eq=False)
class SweepPoint:
    """One sweep value with its resolved config and target."""

    index: int
    param: float
    config: ExperimentConfig
    target: GaussianTarget

    @property
    def d(self) -> int:
        return self.target.dim

    @property
    def kappa(self) -> float:
        return self.config.kappa

    @property
    def family(self) -> str:
        return self.config.proposal.family


def sweep_points(config: ExperimentConfig) -> list[SweepPoint]:
    points = []
    for index, value in enumerate(config.sweep_values):
        resolved = apply_sweep(config, value)
        points.append(
            SweepPoint(
                index=index,
                param=value,
                config=resolved,
                target=build_target(resolved.target),
            )
        )
    return points


@dataclass(frozen=True, eq=False)
class PointPrediction:
    """Finite-d and limiting predictions at one sweep point."""

    d: int
    h: float
    L: Optional[int]
    acceptance: AcceptancePrediction
    accept_limit: float
    jump_limit: dict[int, float]
    jumps: dict[int, JumpPrediction] = field(default_factory=dict)


def _scale(point: SweepPoint, h: float) -> float:
    """Invert the scaling law for the constant ``l`` at this dimension."""
    spec = point.config.proposal
    if spec.l is not None:
        return spec.l
    r = scaling_exponent(point.family, point.kappa)
    if point.family == "hmc":
        return h * point.d**r
    return math.sqrt(h * point.d**r)


def predict_point(point: SweepPoint) -> PointPrediction:
    """Acceptance and mode-wise jump predictions for one sweep point.

    Raises:
        StepTooLargeError, UnstableError, NegativeRadicandError: propagated
            from the spectral model.
    """
    spec = point.config.proposal
    V = resolve_preconditioner(point.target, preconditioner_from_spec(point.target, spec))
    lambda2 = preconditioned_eigenvalues(point.target, V)
    family = family_from_spec(spec, point.d, point.kappa)
    model = model_from_family(lambda2, family)
    acceptance = predict_acceptance(model)

    L = family.L if isinstance(family, HmcFamily) else None
    limits = asymptotic_limits(
        point.family,
        _scale(point, family.h),
        kappa=point.kappa,
        theta=spec.effective_theta,
        T=family.h * L if L is not None else None,
        tau=tau_from_lambdas(lambda2, point.kappa),
    )
    modes = point.config.chain.directions
    jumps = {}
    if model.dim >= 2:
        jumps = {i: predict_jump(model, i, acceptance) for i in modes}
    jump_limit = {
        i: limits.jump(point.d, math.sqrt(float(lambda2[i]))) for i in modes
    }
    return PointPrediction(
        d=point.d,
        h=family.h,
        L=L,
        acceptance=acceptance,
        accept_limit=limits.acceptance,
        jump_limit=jump_limit,
        jumps=jumps,
    )


def prediction_rows(point: SweepPoint, pred: PointPrediction) -> list[tuple]:
    """``predictions.csv`` rows; one per monitored mode, or one without a mode."""
    adjusted = point.config.proposal.adjusted
    accept_pred = pred.acceptance.acceptance if adjusted else None
    base = (
        point.param,
        point.d,
        pred.acceptance.mu,
        pred.acceptance.sigma2,
        accept_pred,
        pred.accept_limit if adjusted else None,
    )
    modes = point.config.chain.directions
    if not modes:
        return [base + (None, None, None)]
    rows = []
    for i in modes:
        jump = pred.jumps.get(i)
        if jump is None or not adjusted:
            rows.append(base + (i, None, None))
        else:
            rows.append(base + (i, jump.esjd, jump.U3_bound))
    return rows


def predict_rows(config: ExperimentConfig) -> list[tuple]:
    rows = []
    for point in sweep_points(config):
        rows += prediction_rows(point, predict_point(point))
    return rows


def _directions(point: SweepPoint) -> tuple[Direction, ...]:
    spec = point.config.proposal
    V = preconditioner_from_spec(point.target, spec)
    vectors = mode_directions(point.target, point.config.chain.directions, V)
    return tuple(Direction(label, v) for label, v in vectors.items())


def chain_config(point: SweepPoint, cold_start: bool = False) -> ChainConfig:
    """Equilibrium start unless ``cold_start`` (state zero) is requested.

    The unadjusted chain starts in its own equilibrium, the proposal target.
    """
    chain = point.config.chain
    if cold_start:
        start, x0 = StartKind.EXPLICIT, np.zeros(point.d)
    elif point.config.proposal.adjusted:
        start, x0 = StartKind.EXACT, None
    else:
        start, x0 = StartKind.PROPOSAL_TARGET, None
    return ChainConfig(
        n_steps=chain.n_steps,
        burn_in=chain.burn_in,
        start=start,
        x0=x0,
        directions=_directions(point),
        store_projections=True,
    )


def run_point(point: SweepPoint, cold_start: bool = False) -> list[ChainResult]:
    """Run every chain of one sweep point.

    Chain ``k`` of point ``p`` uses stream id ``p·10⁴ + k``.
    """
    chain = point.config.chain
    if chain.n_chains > STREAM_STRIDE:
        raise ValueError(f"at most {STREAM_STRIDE} chains per sweep point")
    proposal = build_proposal(point.target, point.config.proposal, point.kappa)
    base = RandomStream(chain.seed, point.index * STREAM_STRIDE)
    logger.info(
        "Sampling %s d=%d param=%s with %d chain(s) of %d steps",
        point.family,
        point.d,
        point.param,
        chain.n_chains,
        chain.n_steps,
    )
    return run_parallel_chains(
        point.target,
        proposal,
        chain_config(point, cold_start),
        chain.n_chains,
        base,
        adjust=point.config.proposal.adjusted,
    )


def _iact_or_none(result: ChainResult, label: str) -> Optional[float]:
    try:
        return iact(result.projection(label), label).reported
    except (TraceTooShortError, DegenerateTraceError) as e:
        logger.debug("No IACT for %s: %s", label, e)
        return None


def _lag1_or_none(result: ChainResult, label: str) -> Optional[float]:
    try:
        return lag1_correlation(result, label)
    except TraceTooShortError:
        return None


def chain_rows(point: SweepPoint, results: list[ChainResult]) -> list[tuple]:
    rows = []
    for k, result in enumerate(results):
        row: list = [point.param, k, result.acceptance_rate]
        errors = []
        for i in point.config.chain.directions:
            label = f"mode{i}"
            jump = esjd(result, label)
            row += [jump.esjd, _lag1_or_none(result, label), _iact_or_none(result, label)]
            errors.append(jump.se)
        row += [result.n_recorded, result.mean_accept_prob, *errors]
        rows.append(tuple(row))
    return rows


@dataclass
class SampleOutcome:
    modes: list[int]
    prediction_rows: list[tuple] = field(default_factory=list)
    chain_rows: list[tuple] = field(default_factory=list)


def run_sample(config: ExperimentConfig, cold_start: bool = False) -> SampleOutcome:
    """Predictions and chain diagnostics for every sweep point."""
    outcome = SampleOutcome(modes=list(config.chain.directions))
    for point in sweep_points(config):
        outcome.prediction_rows += prediction_rows(point, predict_point(point))
        outcome.chain_rows += chain_rows(point, run_point(point, cold_start))
    return outcome


@dataclass
class ScalingOutcome:
    rows: list[tuple]
    summary: dict


def _pooled_esjd(results: list[ChainResult], label: str) -> tuple[float, float]:
    """Step-weighted mean ESJD over chains and its standard error."""
    estimates = [esjd(r, label) for r in results]
    n = sum(e.n for e in estimates)
    if n == 0:
        return float("nan"), float("nan")
    mean = math.fsum(e.esjd * e.n for e in estimates) / n
    se = math.sqrt(math.fsum((e.se * e.n) ** 2 for e in estimates)) / n
    return mean, se


def fit_slope(d: list[int], values: list[float]) -> float:
    """Least-squares slope of ``log value`` against ``log d``."""
    x, y = np.log(np.asarray(d, dtype=float)), np.asarray(values, dtype=float)
    ok = np.isfinite(y) & (y > 0)
    if np.count_nonzero(ok) < 2:
        return float("nan")
    return float(np.polyfit(x[ok], np.log(y[ok]), 1)[0])


def run_scaling(config: ExperimentConfig, cold_start: bool = False) -> ScalingOutcome:
    """Acceptance and ESJD across a dimension sweep with a log-log slope fit.

    The step follows the scaling law, so the configured proposal should give
    ``l`` rather than ``h``. The expected slope is ``−r`` for Langevin
    families, ``0`` for HMC with a fixed integration time and ``−2r`` for
    HMC with a fixed number of leapfrog steps.
    """
    if config.sweep is None or config.sweep.parameter != "d":
        raise ValueError("scaling needs a sweep over d")
    if config.proposal.l is None:
        logger.warning("Scaling with a fixed h; acceptance will not settle to a limit")
    modes = list(config.chain.directions)
    rows: list[tuple] = []
    dims: list[int] = []
    accept_rates: list[float] = []
    per_mode: dict[int, list[float]] = {i: [] for i in modes}
    for point in sweep_points(config):
        pred = predict_point(point)
        results = run_point(point, cold_start)
        pooled = sum(r.accept_count for r in results) / max(1, sum(r.n_recorded for r in results))
        dims.append(point.d)
        accept_rates.append(pooled)
        for i in modes:
            value, se = _pooled_esjd(results, f"mode{i}")
            per_mode[i].append(value)
            jump = pred.jumps.get(i)
            rows.append((
                point.d, pred.h, pred.L, pred.acceptance.acceptance, pred.accept_limit,
                pooled, i, value, se, jump.esjd if jump else None, pred.jump_limit[i],
            ))
        if not modes:
            rows.append((
                point.d, pred.h, pred.L, pred.acceptance.acceptance, pred.accept_limit,
                pooled, None, None, None, None, None,
            ))
    r = scaling_exponent(config.proposal.family, config.kappa)
    if config.proposal.family != "hmc":
        expected = -r
    else:
        # Fixed T gives a d-free jump; fixed L shrinks T like h, so ESJD ~ h².
        expected = 0.0 if config.proposal.T is not None else -2.0 * r
    summary = {
        "family": config.proposal.family,
        "kappa": config.kappa,
        "r": r,
        "expected_slope": expected,
        "slopes": {f"mode{i}": fit_slope(dims, per_mode[i]) for i in modes},
        "acceptance_spread": max(accept_rates) - min(accept_rates),
        "dimensions": dims,
    }
    return ScalingOutcome(rows=rows, summary=summary)
