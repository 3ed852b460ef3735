"""AR(1) proposals, matrix splittings and proposal targets."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.config import get_tolerances
from src.exceptions import (
    DimensionMismatchError,
    NotConvergentError,
    NotPositiveDefiniteError,
    SingularError,
)
from src.linalg import (
    Matrix,
    SpdFactorization,
    SymmetricOperator,
    dim_of,
    is_diagonal,
    matvec,
    solve,
    spd_factorize,
    spectral_radius,
    to_dense,
)

logger = logging.getLogger(__name__)


def _check_square(X: Matrix, dim: int, name: str) -> None:
    if isinstance(X, SymmetricOperator):
        if X.dim != dim:
            raise DimensionMismatchError(f"{name} has dimension {X.dim}, expected {dim}")
        return
    arr = np.asarray(X)
    if arr.shape != (dim, dim):
        raise DimensionMismatchError(f"{name} has shape {arr.shape}, expected ({dim}, {dim})")


def _as_matrix(X: Matrix) -> Matrix:
    if isinstance(X, SymmetricOperator):
        return X
    arr = np.array(X, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    arr.setflags(write=False)
    return arr


def is_symmetric_matrix(X: Matrix, tol: float | None = None) -> bool:
    if isinstance(X, SymmetricOperator):
        return True
    tol = get_tolerances().splitting_symmetry if tol is None else tol
    arr = np.asarray(X)
    scale = max(1.0, float(np.max(np.abs(arr))))
    return float(np.max(np.abs(arr - arr.T))) <= tol * scale


def symmetric_part(X: Matrix) -> SymmetricOperator:
    """SymmetricOperator for a matrix known to be symmetric up to roundoff."""
    if isinstance(X, SymmetricOperator):
        return X
    return SymmetricOperator.from_dense(np.asarray(X))


@dataclass(frozen=True, eq=False)
class Ar1Proposal:
    """The AR(1) proposal ``y = G·x + g + ν`` with ``ν ~ N(0, Σ)``.

    ``G`` is a general square array or, for spectral (diagonal) models, a
    diagonal SymmetricOperator. The factorization of ``Σ`` is computed once.
    """

    G: Matrix
    g: np.ndarray
    Sigma: SymmetricOperator
    noise: SpdFactorization = field(init=False, repr=False)

    def __post_init__(self) -> None:
        G = _as_matrix(self.G)
        d = self.Sigma.dim
        _check_square(G, d, "G")
        g = np.array(self.g, dtype=float).reshape(-1)
        if g.size != d:
            raise DimensionMismatchError(f"g has length {g.size}, expected {d}")
        g.setflags(write=False)
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "noise", spd_factorize(self.Sigma))

    @property
    def dim(self) -> int:
        return self.Sigma.dim

    @property
    def is_diagonal(self) -> bool:
        return is_diagonal(self.G) and self.Sigma.is_diagonal

    def mean_step(self, x: np.ndarray) -> np.ndarray:
        """Return ``G·x + g``."""
        return matvec(self.G, x) + self.g

    def sample_noise(self, rng) -> np.ndarray:
        return self.noise.apply_factor(rng.standard_normal(self.dim))

    def propose(self, x: np.ndarray, rng) -> np.ndarray:
        return self.mean_step(x) + self.sample_noise(rng)

    def spectral_radius(self) -> float:
        return spectral_radius(self.G)


@dataclass(frozen=True, eq=False)
class ProposalTarget:
    """Equilibrium ``N(𝒜⁻¹β, 𝒜⁻¹)`` of the unadjusted proposal chain."""

    mean: np.ndarray
    precision: SymmetricOperator

    @property
    def dim(self) -> int:
        return self.precision.dim


@dataclass(frozen=True, eq=False)
class MatrixSplitting:
    """Splitting ``M·y = N·x + β + ν`` of ``𝒜 = M − N`` with ``ν ~ N(0, Mᵀ + N)``.

    ``precision`` (𝒜) and ``noise_covariance`` (Mᵀ + N) are derived at
    construction and must be symmetric. Positive definiteness of both is
    enforced only for convergent splittings; for non-convergent ones the
    factorizations are left unset.

    ``ar1`` optionally carries an AR(1) form already known to the caller
    (e.g. MALA's structurally cheap ``Σ = hI``); otherwise it is derived on
    first use by :meth:`as_ar1`.
    """

    M: Matrix
    N: Matrix
    beta: np.ndarray
    ar1: Optional[Ar1Proposal] = field(default=None, repr=False)
    precision: SymmetricOperator = field(init=False, repr=False)
    noise_covariance: SymmetricOperator = field(init=False, repr=False)
    radius: float = field(init=False)
    convergent: bool = field(init=False)
    symmetric: bool = field(init=False)
    precision_factor: Optional[SpdFactorization] = field(init=False, repr=False)
    noise_factor: Optional[SpdFactorization] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        M = _as_matrix(self.M)
        N = _as_matrix(self.N)
        d = dim_of(M)
        _check_square(N, d, "N")
        beta = np.array(self.beta, dtype=float).reshape(-1)
        if beta.size != d:
            raise DimensionMismatchError(f"beta has length {beta.size}, expected {d}")
        beta.setflags(write=False)
        if self.ar1 is not None and self.ar1.dim != d:
            raise DimensionMismatchError("AR(1) form does not match splitting dimension")

        if is_diagonal(M) and is_diagonal(N):
            if np.any(M.diag == 0.0):
                raise SingularError("M has a zero diagonal entry")
            precision = SymmetricOperator.from_diagonal(M.diag - N.diag)
            noise_cov = SymmetricOperator.from_diagonal(M.diag + N.diag)
            G = SymmetricOperator.from_diagonal(N.diag / M.diag)
        else:
            Md, Nd = to_dense(M), to_dense(N)
            precision = SymmetricOperator.from_dense(Md - Nd)
            noise_cov = SymmetricOperator.from_dense(Md.T + Nd)
            G = self.ar1.G if self.ar1 is not None else solve(Md, Nd)
        radius = spectral_radius(G)
        convergent = radius < 1.0 - get_tolerances().unit_radius_margin

        precision_factor = noise_factor = None
        if convergent:
            try:
                precision_factor = spd_factorize(precision)
                noise_factor = spd_factorize(noise_cov)
            except NotPositiveDefiniteError as e:
                raise NotPositiveDefiniteError(
                    f"convergent splitting with indefinite 𝒜 or Mᵀ+N: {e}", pivot=e.pivot
                ) from e
        else:
            logger.debug("Splitting is not convergent (spectral radius %.6g)", radius)

        object.__setattr__(self, "M", M)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "noise_covariance", noise_cov)
        object.__setattr__(self, "radius", float(radius))
        object.__setattr__(self, "convergent", bool(convergent))
        object.__setattr__(self, "symmetric", is_symmetric_matrix(M) and is_symmetric_matrix(N))
        object.__setattr__(self, "precision_factor", precision_factor)
        object.__setattr__(self, "noise_factor", noise_factor)

    @property
    def dim(self) -> int:
        return dim_of(self.M)

    @property
    def is_diagonal(self) -> bool:
        return is_diagonal(self.M) and is_diagonal(self.N)

    def require_convergent(self) -> None:
        if not self.convergent:
            raise NotConvergentError(
                f"splitting is not convergent (spectral radius {self.radius:.6g})",
                spectral_radius=self.radius,
            )

    def as_ar1(self) -> Ar1Proposal:
        """The AR(1) form, derived from ``(M, N, β)`` when not supplied."""
        if self.ar1 is None:
            from src.splitting.conversions import splitting_to_ar1

            object.__setattr__(self, "ar1", splitting_to_ar1(self))
        return self.ar1
