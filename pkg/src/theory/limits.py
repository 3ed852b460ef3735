"""Large-dimension limits of acceptance rate and jump size, and step-size scaling."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr, ndtri

from src.linalg import SymmetricOperator, operator_power, spectral_decompose
from src.proposals.preconditioning import preconditioned_precision, resolve_preconditioner
from src.target import GaussianTarget

FamilyName = Literal["mala", "ula", "theta_langevin", "hmc"]

LANGEVIN_FAMILIES = ("mala", "ula", "theta_langevin")


def _check_family(family: str) -> None:
    if family not in LANGEVIN_FAMILIES and family != "hmc":
        raise ValueError(f"unknown proposal family {family!r}")


def scaling_exponent(family: str, kappa: float = 0.0) -> float:
    """``r = 1/3 + 2κ`` for Langevin proposals, ``r = 1/4 + κ`` for HMC."""
    _check_family(family)
    if family == "hmc":
        return 0.25 + kappa
    return 1.0 / 3.0 + 2.0 * kappa


@dataclass(frozen=True)
class ScalingLaw:
    """Step size as a function of dimension: ``h = l²d^{−r}`` or ``h = l·d^{−r}`` (HMC)."""

    family: str
    l: float
    kappa: float = 0.0

    def __post_init__(self) -> None:
        _check_family(self.family)
        if self.l <= 0:
            raise ValueError(f"scale l must be positive, got {self.l}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")

    @property
    def r(self) -> float:
        return scaling_exponent(self.family, self.kappa)

    def step(self, d: int) -> float:
        if d < 1:
            raise ValueError("dimension must be positive")
        if self.family == "hmc":
            return self.l * d ** (-self.r)
        return self.l**2 * d ** (-self.r)


@dataclass(frozen=True)
class AsymptoticLimits:
    family: str
    r: float
    l: float
    acceptance: float
    integration_time: Optional[float] = None

    def jump(self, d: int, lam: float = 1.0) -> float:
        """Limiting squared jump along a mode with precision eigenvalue ``lam²``.

        Langevin: ``l²d^{−r}·acceptance`` (mode independent). HMC:
        ``2(1 − cos(λT′))/λ²·acceptance``.
        """
        if self.family == "hmc":
            if self.integration_time is None:
                raise ValueError("HMC jump limit needs the integration time T'")
            return 2.0 * (1.0 - math.cos(lam * self.integration_time)) / lam**2 * self.acceptance
        return self.l**2 * d ** (-self.r) * self.acceptance


def asymptotic_limits(
    family: str,
    l: float,
    kappa: float = 0.0,
    theta: float = 0.0,
    T: Optional[float] = None,
    tau: float = 1.0,
) -> AsymptoticLimits:
    """Closed-form limits as ``d → ∞``.

    Langevin (θ = 0 is MALA): acceptance ``2Φ(−l³|θ−½|√τ/4)``.
    HMC: acceptance ``2Φ(−l²/(8√2·√(1+4κ)))``.
    """
    _check_family(family)
    theta = 0.0 if family in ("mala", "ula") else theta
    if family == "hmc":
        scale = 8.0 * math.sqrt(2.0) * math.sqrt(1.0 + 4.0 * kappa)
        acceptance = 2.0 * float(ndtr(-(l**2) / scale))
    else:
        acceptance = 2.0 * float(ndtr(-(l**3) * abs(theta - 0.5) * math.sqrt(tau) / 4.0))
    return AsymptoticLimits(
        family=family,
        r=scaling_exponent(family, kappa),
        l=l,
        acceptance=min(1.0, acceptance),
        integration_time=T,
    )


def tau_from_lambdas(lambda2: np.ndarray, kappa: float = 0.0) -> float:
    """Finite-d ``τ = d^{−(1+6κ)}·Σλᵢ⁶`` from precision eigenvalues ``λᵢ²``."""
    lambda2 = np.asarray(lambda2, dtype=float)
    d = lambda2.size
    return math.fsum(lambda2**3) / d ** (1.0 + 6.0 * kappa)


def optimal_langevin_scale() -> float:
    """``s₀`` maximizing ``s²Φ(−s³)``; the optimal acceptance is ``2Φ(−s₀³)``."""

    def stationarity(s: float) -> float:
        x = s**3
        density = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
        return 2.0 * float(ndtr(-x)) - 3.0 * x * density

    return float(brentq(stationarity, 0.1, 2.0, xtol=1e-12))


def scale_for_acceptance(
    family: str,
    acceptance: float,
    kappa: float = 0.0,
    theta: float = 0.0,
    tau: float = 1.0,
) -> float:
    """Invert the limiting acceptance rate for the scale ``l``."""
    _check_family(family)
    if not 0.0 < acceptance < 1.0:
        raise ValueError(f"acceptance must lie in (0, 1), got {acceptance}")
    x = -float(ndtri(0.5 * acceptance))
    if family == "hmc":
        return math.sqrt(8.0 * math.sqrt(2.0) * math.sqrt(1.0 + 4.0 * kappa) * x)
    theta = 0.0 if family in ("mala", "ula") else theta
    spread = abs(theta - 0.5)
    if spread == 0.0:
        raise ValueError("θ = ½ accepts every proposal; no scale attains this rate")
    return (4.0 * x / (spread * math.sqrt(tau))) ** (1.0 / 3.0)


def mode_directions(
    target: GaussianTarget,
    modes: Sequence[int],
    V: Optional[SymmetricOperator] = None,
) -> dict[str, np.ndarray]:
    """Directions ``V^{−1/2}qᵢ`` for eigenvectors ``qᵢ`` of ``V^{1/2}AV^{1/2}``.

    Modes are 0-based indices in ascending eigenvalue order; labels are
    ``"mode<i>"``.
    """
    V = resolve_preconditioner(target, V)
    spec = spectral_decompose(preconditioned_precision(target, V))
    root_inv = operator_power(V, -0.5)
    directions = {}
    for i in modes:
        if not 0 <= i < target.dim:
            raise IndexError(f"mode {i} out of range for dimension {target.dim}")
        directions[f"mode{i}"] = root_inv.matvec(spec.vector(i))
    return directions
