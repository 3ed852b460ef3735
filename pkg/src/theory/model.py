"""Per-eigenmode description of a splitting whose matrices are functions of A."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from src.config import get_tolerances
from src.exceptions import (
    DenseCapError,
    NotSimultaneouslyDiagonalizableError,
    StepTooLargeError,
)
from src.linalg import spectral_decompose, to_dense
from src.proposals.hmc import HmcConfig, hmc_mode_eigenvalues
from src.splitting import MatrixSplitting, proposal_target
from src.target import GaussianTarget


@dataclass(frozen=True, eq=False)
class SpectralSplittingModel:
    """Per-mode scalars of a splitting diagonal in the target's eigenbasis.

    Attributes:
        lambda2: target precision eigenvalues λᵢ².
        lambda2_tilde: proposal-target precision eigenvalues λ̃ᵢ².
        G: iteration-matrix eigenvalues Gᵢ.
        m: target mean in the eigenbasis.
        m_tilde: proposal-target mean in the eigenbasis.
    """

    lambda2: np.ndarray
    lambda2_tilde: np.ndarray
    G: np.ndarray
    m: np.ndarray
    m_tilde: np.ndarray

    def __post_init__(self) -> None:
        arrays = {}
        for name in ("lambda2", "lambda2_tilde", "G", "m", "m_tilde"):
            arr = np.array(getattr(self, name), dtype=float).reshape(-1)
            arr.setflags(write=False)
            arrays[name] = arr
        d = arrays["lambda2"].size
        if d == 0:
            raise ValueError("model needs at least one mode")
        for name, arr in arrays.items():
            if arr.size != d:
                raise ValueError(f"{name} has {arr.size} entries, expected {d}")
            object.__setattr__(self, name, arr)
        if np.any(arrays["lambda2"] <= 0):
            raise ValueError("target precision eigenvalues must be positive")

    @property
    def dim(self) -> int:
        return self.lambda2.size

    @property
    def lam(self) -> np.ndarray:
        return np.sqrt(self.lambda2)

    @property
    def g_tilde(self) -> np.ndarray:
        return 1.0 - self.G

    @property
    def g(self) -> np.ndarray:
        return 1.0 - self.G**2

    @property
    def r(self) -> np.ndarray:
        return (self.lambda2 - self.lambda2_tilde) / self.lambda2

    @property
    def r_tilde(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return (self.lambda2 - self.lambda2_tilde) / self.lambda2_tilde

    @property
    def r_hat(self) -> np.ndarray:
        return self.m - self.m_tilde

    @property
    def convergent(self) -> bool:
        return bool(np.all(np.abs(self.G) < 1.0))


@dataclass(frozen=True)
class MalaFamily:
    h: float


@dataclass(frozen=True)
class ThetaLangevinFamily:
    h: float
    theta: float


@dataclass(frozen=True)
class HmcFamily:
    h: float
    L: int


Family = Union[MalaFamily, ThetaLangevinFamily, HmcFamily]


def _langevin_modes(lambda2: np.ndarray, h: float, theta: float):
    t = h * lambda2
    rho = 0.5 * (theta - 0.5)
    scale = 1.0 + rho * t
    if np.any(scale <= 0):
        i = int(np.argmin(scale))
        raise StepTooLargeError(
            f"mode {i} has h·λ² = {t[i]:.6g}; proposal target precision is not positive"
        )
    G = 1.0 - 0.5 * t / (1.0 + 0.5 * theta * t)
    return scale * lambda2, G


def model_from_family(
    lambdas: np.ndarray,
    family: Family,
    means: Optional[np.ndarray] = None,
) -> SpectralSplittingModel:
    """Closed-form per-mode model for a named proposal family.

    ``lambdas`` are the eigenvalues λᵢ² of ``V·A``. These families leave the
    mean invariant, so ``m̃ = m`` (``means``, zero by default).

    Raises:
        StepTooLargeError: a Langevin mode has non-positive λ̃ᵢ².
        UnstableError: an HMC mode violates ``h²λᵢ² < 4``.
    """
    lambda2 = np.asarray(lambdas, dtype=float).reshape(-1)
    m = np.zeros(lambda2.size) if means is None else np.asarray(means, dtype=float)
    if isinstance(family, MalaFamily):
        lambda2_tilde, G = _langevin_modes(lambda2, family.h, 0.0)
    elif isinstance(family, ThetaLangevinFamily):
        lambda2_tilde, G = _langevin_modes(lambda2, family.h, family.theta)
    elif isinstance(family, HmcFamily):
        G = hmc_mode_eigenvalues(HmcConfig(h=family.h, L=family.L), lambda2)
        lambda2_tilde = lambda2 * (1.0 - 0.25 * family.h**2 * lambda2)
    else:
        raise TypeError(f"unknown proposal family {family!r}")
    return SpectralSplittingModel(
        lambda2=lambda2, lambda2_tilde=lambda2_tilde, G=G, m=m, m_tilde=m
    )


def _off_diagonal(X: np.ndarray) -> float:
    return float(np.max(np.abs(X - np.diag(np.diag(X))))) if X.shape[0] > 1 else 0.0


def model_from_dense(
    target: GaussianTarget, splitting: MatrixSplitting
) -> SpectralSplittingModel:
    """Diagonalize ``(A, M, N)`` simultaneously in the eigenbasis of ``A``.

    Raises:
        NotSimultaneouslyDiagonalizableError: ``M`` or ``N`` is not a function
            of ``A``.
        NotConvergentError: the splitting is not convergent.
    """
    tol = get_tolerances()
    if splitting.dim != target.dim:
        raise ValueError("splitting and target dimensions differ")
    pt = proposal_target(splitting)
    m_full = target.mean
    m_tilde_full = pt.mean

    if target.is_diagonal and splitting.is_diagonal:
        order = np.argsort(target.precision.diag, kind="stable")
        M, N = splitting.M.diag[order], splitting.N.diag[order]
        return SpectralSplittingModel(
            lambda2=target.precision.diag[order],
            lambda2_tilde=M - N,
            G=N / M,
            m=m_full[order],
            m_tilde=m_tilde_full[order],
        )

    if target.dim > tol.dense_cap:
        raise DenseCapError("dense spectral model above the dense cap")
    A = target.precision.to_dense()
    M, N = to_dense(splitting.M), to_dense(splitting.N)
    for name, X in (("M", M), ("N", N)):
        scale = max(1.0, np.linalg.norm(A) * np.linalg.norm(X))
        if np.linalg.norm(A @ X - X @ A) > tol.commute_tol * scale:
            raise NotSimultaneouslyDiagonalizableError(f"{name} does not commute with A")

    spec = spectral_decompose(target.precision)
    Q = spec.basis()
    Md, Nd = Q.T @ M @ Q, Q.T @ N @ Q
    for name, X in (("M", Md), ("N", Nd)):
        if _off_diagonal(X) > tol.commute_tol * max(1.0, float(np.max(np.abs(X)))):
            raise NotSimultaneouslyDiagonalizableError(
                f"{name} is not diagonal in the eigenbasis of A"
            )
    Mi, Ni = np.diag(Md), np.diag(Nd)
    return SpectralSplittingModel(
        lambda2=spec.eigenvalues,
        lambda2_tilde=Mi - Ni,
        G=Ni / Mi,
        m=Q.T @ m_full,
        m_tilde=Q.T @ m_tilde_full,
    )
