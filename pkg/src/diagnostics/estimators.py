"""Empirical chain diagnostics: jump size, lag-1 correlation, IACT, moments."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
import scipy.fft

from src.exceptions import DegenerateTraceError, TraceTooShortError, UnknownDirectionError
from src.sampler import ChainResult, Direction
from src.target import GaussianTarget

logger = logging.getLogger(__name__)

MIN_TRACE_LENGTH = 100

DirectionRef = Union[str, Direction]


@dataclass(frozen=True)
class EsjdEstimate:
    """Mean squared jump along a direction.

    The standard error is ``std/√n`` of the squared jumps and ignores their
    autocorrelation.
    """

    label: str
    esjd: float
    se: float
    n: int


@dataclass(frozen=True)
class Lag1Estimate:
    label: str
    direct: float
    identity: float
    se: float
    variance: float

    @property
    def agrees(self) -> bool:
        return abs(self.direct - self.identity) <= 3.0 * self.se + 1e-12


@dataclass(frozen=True)
class IactEstimate:
    """Integrated autocorrelation time by Geyer's initial positive sequence."""

    label: str
    iact: float
    lag1: float
    truncation_lag: int

    @property
    def reported(self) -> float:
        return max(1.0, self.iact)


def _series_from_trace(result: ChainResult, direction: Direction) -> np.ndarray:
    if result.trace is None or result.trace.states is None:
        raise UnknownDirectionError(
            f"direction {direction.label!r} was not registered and no state trace is stored"
        )
    return result.trace.states @ direction.vector


def _label(direction: DirectionRef) -> str:
    return direction if isinstance(direction, str) else direction.label


def _jump_moments(result: ChainResult, direction: DirectionRef) -> tuple[int, float, float]:
    """``(n, Σ jump², Σ jump⁴)`` from streamed sums or the stored trace."""
    label = _label(direction)
    if label in result.directions:
        stats = result.direction(label)
        return stats.n_jumps, stats.sq_jump_sum, stats.sq_jump_sq_sum
    if isinstance(direction, str):
        result.direction(label)
    jumps = np.diff(_series_from_trace(result, direction)) ** 2
    return jumps.size, math.fsum(jumps), math.fsum(jumps**2)


def esjd(result: ChainResult, direction: DirectionRef) -> EsjdEstimate:
    """Mean of ``(wᵀ(x_{k+1} − x_k))²`` over post-burn-in steps.

    Rejected steps contribute zero jumps.

    Raises:
        UnknownDirectionError: the direction was not registered and cannot be
            recovered from a stored trace.
    """
    n, s1, s2 = _jump_moments(result, direction)
    if n == 0:
        return EsjdEstimate(label=_label(direction), esjd=float("nan"), se=float("nan"), n=0)
    mean = s1 / n
    var = max(0.0, s2 / n - mean**2) * (n / (n - 1) if n > 1 else 1.0)
    return EsjdEstimate(label=_label(direction), esjd=mean, se=math.sqrt(var / n), n=n)


def _series_sums(result: ChainResult, direction: DirectionRef):
    label = _label(direction)
    if label in result.directions:
        st = result.direction(label)
        return st.n_states, st.proj_sum, st.proj_sq_sum, st.cross_sum, st.first, st.last
    if isinstance(direction, str):
        result.direction(label)
    s = _series_from_trace(result, direction)
    return (
        s.size,
        math.fsum(s),
        math.fsum(s**2),
        math.fsum(s[:-1] * s[1:]),
        float(s[0]) if s.size else 0.0,
        float(s[-1]) if s.size else 0.0,
    )


def lag1_estimates(result: ChainResult, direction: DirectionRef) -> Lag1Estimate:
    """Direct lag-1 autocorrelation and ``1 − ESJD/(2·Var)``.

    A constant projection series (every step rejected) has correlation 1.

    Raises:
        TraceTooShortError: fewer than three projected states.
    """
    n, s, ss, cross, first, last = _series_sums(result, direction)
    if n < 3:
        raise TraceTooShortError(f"lag-1 correlation needs 3 states, have {n}")
    mean = s / n
    centered_sq = ss - n * mean**2
    variance = max(0.0, centered_sq / n)
    jump = esjd(result, direction).esjd
    label = _label(direction)
    if variance <= 0.0:
        return Lag1Estimate(label=label, direct=1.0, identity=1.0, se=0.0, variance=0.0)
    lagged = cross - mean * (s - last) - mean * (s - first) + (n - 1) * mean**2
    direct = lagged / centered_sq
    identity = 1.0 - jump / (2.0 * variance)
    se = math.sqrt(max(1.0 - direct**2, 1.0 / n) / n)
    return Lag1Estimate(
        label=label, direct=direct, identity=identity, se=se, variance=variance
    )


def lag1_correlation(result: ChainResult, direction: DirectionRef) -> float:
    """Direct lag-1 estimate, cross-checked against the ESJD identity."""
    est = lag1_estimates(result, direction)
    if not est.agrees:
        logger.warning(
            "Lag-1 estimates disagree for %s: direct %.6g vs 1 − ESJD/(2Var) %.6g (SE %.3g)",
            est.label,
            est.direct,
            est.identity,
            est.se,
        )
    return est.direct


def autocovariance(values: np.ndarray) -> np.ndarray:
    """Biased autocovariance ``γ_k = (1/n)Σ(x_t − x̄)(x_{t+k} − x̄)`` via FFT."""
    x = np.asarray(values, dtype=float) - np.mean(values)
    n = x.size
    size = scipy.fft.next_fast_len(2 * n)
    f = scipy.fft.rfft(x, n=size)
    return scipy.fft.irfft(f * np.conjugate(f), n=size)[:n] / n


def iact(values: np.ndarray, label: str = "") -> IactEstimate:
    """Geyer-truncated integrated autocorrelation time of a scalar trace.

    Pairs ``ρ_{2k} + ρ_{2k+1}`` are summed while positive;
    ``IACT = −1 + 2Σ pairs``.

    Raises:
        TraceTooShortError: fewer than 100 values.
        DegenerateTraceError: the trace has zero variance.
    """
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size < MIN_TRACE_LENGTH:
        raise TraceTooShortError(
            f"IACT needs at least {MIN_TRACE_LENGTH} values, have {values.size}"
        )
    acov = autocovariance(values)
    if acov[0] <= 0.0:
        raise DegenerateTraceError("trace has zero variance")
    rho = acov / acov[0]
    n = rho.size
    total = 0.0
    k = 0
    while 2 * k + 1 < n:
        pair = rho[2 * k] + rho[2 * k + 1]
        if pair <= 0.0:
            break
        total += pair
        k += 1
    return IactEstimate(
        label=label,
        iact=-1.0 + 2.0 * total,
        lag1=float(rho[1]),
        truncation_lag=2 * k + 1,
    )


@dataclass(frozen=True, eq=False)
class MomentCheckReport:
    """Chain moments against the target's ``(A⁻¹b, A⁻¹)``."""

    mean_z: np.ndarray
    variance_ratio: np.ndarray
    covariance_error: Optional[float]
    z_threshold: float
    rel_tol: float

    @property
    def max_abs_z(self) -> float:
        return float(np.max(np.abs(self.mean_z)))

    @property
    def max_variance_error(self) -> float:
        return float(np.max(np.abs(self.variance_ratio - 1.0)))

    @property
    def passed(self) -> bool:
        if self.max_abs_z >= self.z_threshold:
            return False
        if self.covariance_error is not None:
            return self.covariance_error <= self.rel_tol
        return self.max_variance_error <= self.rel_tol

    def to_report(self) -> dict:
        return {
            "max_abs_z": self.max_abs_z,
            "max_variance_error": self.max_variance_error,
            "covariance_error": self.covariance_error,
            "passed": self.passed,
        }


def target_moment_check(
    result: ChainResult,
    target: GaussianTarget,
    iact_factor: float = 1.0,
    z_threshold: float = 4.0,
    rel_tol: float = 0.05,
) -> MomentCheckReport:
    """Per-coordinate mean z-scores and variance ratios against the target.

    ``iact_factor`` inflates the mean standard error for correlated chains.
    Dense targets with a full covariance accumulator are also compared by
    relative Frobenius error.
    """
    n = result.n_recorded
    if n < 2:
        raise TraceTooShortError("moment check needs at least two recorded states")
    true_var = target.covariance_diagonal()
    mean_z = (result.mean - target.mean) / np.sqrt(iact_factor * true_var / n)
    ratio = result.variance() / true_var
    cov_error = None
    if not target.is_diagonal and result.full_covariance:
        C = target.covariance()
        cov_error = float(np.linalg.norm(result.covariance() - C) / np.linalg.norm(C))
    return MomentCheckReport(
        mean_z=mean_z,
        variance_ratio=ratio,
        covariance_error=cov_error,
        z_threshold=z_threshold,
        rel_tol=rel_tol,
    )
