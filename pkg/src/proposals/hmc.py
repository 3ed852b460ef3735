"""Leapfrog HMC proposals as AR(1) processes.

One leapfrog step with gradient ``b − Aq`` and kinetic energy ``½pᵀVp`` is the
affine map ``(q, p) ↦ K·(q, p) + J·(0, (h/2)b)``. After ``L`` steps the
position is ``y = (Kᴸ)₁₁x + (S·J·(0, (h/2)b))₁ + (Kᴸ)₁₂ξ`` with
``S = (I−K)⁻¹(I−Kᴸ)`` and momentum ``ξ ~ N(0, V⁻¹)``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.config import get_tolerances
from src.exceptions import DenseCapError, SingularError, UnstableError
from src.linalg import SymmetricOperator, solve
from src.proposals.preconditioning import (
    preconditioned_eigenvalues,
    resolve_preconditioner,
)
from src.splitting import Ar1Proposal, MatrixSplitting, symmetric_ar1_to_splitting
from src.target import GaussianTarget

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HmcConfig:
    """Leapfrog step ``h``, number of steps ``L`` and mass preconditioner ``V``."""

    h: float
    L: int = 1
    V: Optional[SymmetricOperator] = None

    def __post_init__(self) -> None:
        if not np.isfinite(self.h) or self.h <= 0:
            raise ValueError(f"step size must be positive, got {self.h}")
        if int(self.L) != self.L or self.L < 1:
            raise ValueError(f"number of leapfrog steps must be >= 1, got {self.L}")

    @property
    def integration_time(self) -> float:
        return self.L * self.h

    def check_stability(self, target: GaussianTarget) -> np.ndarray:
        """Return the eigenvalues of ``V·A`` after checking ``h²·λ_max < 4``.

        Raises:
            UnstableError: the leapfrog step is outside the stability region.
        """
        V = resolve_preconditioner(target, self.V)
        lambdas = preconditioned_eigenvalues(target, V)
        t_max = self.h**2 * float(lambdas[-1])
        if t_max >= 4.0:
            raise UnstableError(
                f"h²·λ_max(VA) = {t_max:.6g} >= 4, leapfrog is unstable"
            )
        return lambdas


@dataclass(frozen=True, eq=False)
class HmcTransfer:
    """Leapfrog transfer matrices ``K`` and ``J`` (2d×2d) and per-mode angles."""

    K: np.ndarray
    J: np.ndarray
    angles: np.ndarray
    L: int

    @property
    def dim(self) -> int:
        return self.K.shape[0] // 2

    def power(self) -> np.ndarray:
        return np.linalg.matrix_power(self.K, self.L)

    def offset(self, b: np.ndarray, h: float) -> np.ndarray:
        """``S·J·(0, (h/2)b)``, the accumulated constant term after L steps."""
        d = self.dim
        c = self.J @ np.concatenate([np.zeros(d), 0.5 * h * np.asarray(b)])
        I = np.eye(2 * d)
        return solve(I - self.K, (I - self.power()) @ c)


def mode_angles(h: float, lambdas: np.ndarray) -> np.ndarray:
    """``θᵢ = −arccos(1 − (h²/2)λᵢ²)`` for eigenvalues ``λᵢ²`` of ``V·A``.

    Raises:
        UnstableError: some ``h²λᵢ² ≥ 4``.
    """
    t = h**2 * np.asarray(lambdas, dtype=float)
    if np.any(t >= 4.0):
        raise UnstableError(
            f"h²·λ_max = {float(np.max(t)):.6g} >= 4, leapfrog is unstable"
        )
    return -np.arccos(1.0 - 0.5 * t)


def hmc_mode_eigenvalues(cfg: HmcConfig, lambdas: np.ndarray) -> np.ndarray:
    """Eigenvalues ``cos(L·θᵢ)`` of the HMC iteration matrix ``(Kᴸ)₁₁``."""
    return np.cos(cfg.L * mode_angles(cfg.h, lambdas))


def hmc_transfer(target: GaussianTarget, cfg: HmcConfig) -> HmcTransfer:
    """Dense block matrices ``K`` and ``J`` of one leapfrog step.

    Raises:
        UnstableError: ``h²·λ_max(VA) ≥ 4``.
        DenseCapError: ``2d`` exceeds the dense cap.
    """
    lambdas = cfg.check_stability(target)
    d = target.dim
    if 2 * d > get_tolerances().dense_cap:
        raise DenseCapError(f"transfer matrices of size {2 * d} exceed the dense cap")
    h = cfg.h
    I = np.eye(d)
    A = target.precision.to_dense()
    V = resolve_preconditioner(target, cfg.V).to_dense()
    VA, AV = V @ A, A @ V
    K = np.block([
        [I - 0.5 * h**2 * VA, h * V],
        [-h * A + 0.25 * h**3 * A @ VA, I - 0.5 * h**2 * AV],
    ])
    J = np.block([
        [2.0 * I, h * V],
        [-0.5 * h * A, 2.0 * I - 0.5 * h**2 * AV],
    ])
    return HmcTransfer(K=K, J=J, angles=mode_angles(h, lambdas), L=int(cfg.L))


def _check_resonance(angles: np.ndarray, L: int) -> None:
    tol = get_tolerances()
    ratio = np.abs(np.sin(L * angles))
    worst = int(np.argmin(ratio))
    if ratio[worst] <= tol.resonance_tol:
        raise SingularError(
            f"mode {worst} is resonant (sin(Lθ) = {ratio[worst]:.3e}); "
            "proposal covariance is singular"
        )
    if ratio[worst] < tol.resonance_warn:
        logger.warning(
            "Mode %d is close to resonance (|sin(Lθ)| = %.3e), "
            "proposal covariance is ill-conditioned",
            worst,
            ratio[worst],
        )


def leapfrog(
    target: GaussianTarget,
    cfg: HmcConfig,
    q0: np.ndarray,
    p0: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate ``L`` Störmer-Verlet steps from ``(q0, p0)``.

    ``q0`` and ``p0`` may be vectors or d×k arrays of column states.
    """
    V = resolve_preconditioner(target, cfg.V)
    A, b = target.precision, target.shift
    q = np.array(q0, dtype=float)
    p = np.array(p0, dtype=float)
    shift = b if q.ndim == 1 else b[:, None]
    half = 0.5 * cfg.h
    for _ in range(int(cfg.L)):
        p = p - half * (A.matvec(q) - shift)
        q = q + cfg.h * V.matvec(p)
        p = p - half * (A.matvec(q) - shift)
    return q, p


def hamiltonian(
    target: GaussianTarget,
    V: Optional[SymmetricOperator],
    q: np.ndarray,
    p: np.ndarray,
) -> float:
    """``H(q, p) = ½pᵀVp + ½qᵀAq − bᵀq``."""
    V = resolve_preconditioner(target, V)
    return (
        0.5 * V.quadratic(p)
        + 0.5 * target.precision.quadratic(q)
        - float(np.dot(target.shift, q))
    )


def hmc_proposal(
    target: GaussianTarget, cfg: HmcConfig
) -> tuple[Ar1Proposal, MatrixSplitting]:
    """HMC proposal ``y = (Kᴸ)₁₁x + g + (Kᴸ)₁₂ξ`` and its symmetric splitting.

    ``Σ = (Kᴸ)₁₂V⁻¹(Kᴸ)₁₂ᵀ`` and the splitting is ``M = Σ⁻¹(I + (Kᴸ)₁₁)``,
    ``𝒜 = Σ⁻¹(I − (Kᴸ)₁₁²)``, whose proposal target mean is ``A⁻¹b``.

    Diagonal targets with diagonal ``V`` use the per-mode closed form
    ``(Kᴸ)₁₁ = cos(Lθ)``, ``(Kᴸ)₁₂ = hV·sin(Lθ)/sin(θ)``; ``g`` is the
    leapfrog endpoint started from ``(0, 0)``.

    Raises:
        UnstableError: ``h²·λ_max(VA) ≥ 4``.
        SingularError: a mode is resonant, ``sin(Lθᵢ) = 0``.
    """
    V = resolve_preconditioner(target, cfg.V)
    h, L = cfg.h, int(cfg.L)
    d = target.dim

    if target.is_diagonal and V.is_diagonal:
        v = V.diag
        angles = mode_angles(h, v * target.precision.diag)
        _check_resonance(angles, L)
        G = np.cos(L * angles)
        K12 = h * v * np.sin(L * angles) / np.sin(angles)
        g, _ = leapfrog(target, cfg, np.zeros(d), np.zeros(d))
        ar1 = Ar1Proposal(
            G=SymmetricOperator.from_diagonal(G),
            g=g,
            Sigma=SymmetricOperator.from_diagonal(K12**2 / v),
        )
        return ar1, symmetric_ar1_to_splitting(ar1)

    transfer = hmc_transfer(target, cfg)
    _check_resonance(transfer.angles, L)
    KL = transfer.power()
    K11, K12 = KL[:d, :d], KL[:d, d:]
    g = transfer.offset(target.shift, h)[:d]
    Sigma = K12 @ solve(V, K12.T)
    ar1 = Ar1Proposal(G=K11, g=g, Sigma=SymmetricOperator.from_dense(Sigma))
    return ar1, symmetric_ar1_to_splitting(ar1)
