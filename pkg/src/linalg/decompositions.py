"""Factorizations, spectral decompositions and solves."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg

from src.config import get_tolerances
from src.exceptions import (
    ConvergenceFailureError,
    DenseCapError,
    DimensionMismatchError,
    NotPositiveDefiniteError,
    SingularError,
)
from src.linalg.operators import Matrix, SymmetricOperator

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SpdFactorization:
    """Cholesky factor ``L`` with ``L·Lᵀ = source``.

    For diagonal sources ``factor`` is the vector of square roots.
    """

    factor: np.ndarray
    source: SymmetricOperator

    @property
    def dim(self) -> int:
        return self.source.dim

    @property
    def is_diagonal(self) -> bool:
        return self.source.is_diagonal

    def apply_factor(self, xi: np.ndarray) -> np.ndarray:
        """Return ``L·ξ`` (a draw from N(0, source) when ξ is standard normal)."""
        if self.is_diagonal:
            return self.factor * xi
        return self.factor @ xi

    def solve_factor(self, rhs: np.ndarray) -> np.ndarray:
        """Return ``L⁻¹·rhs``."""
        if self.is_diagonal:
            return rhs / self.factor
        return scipy.linalg.solve_triangular(self.factor, rhs, lower=True)

    def solve_factor_transpose(self, rhs: np.ndarray) -> np.ndarray:
        """Return ``L⁻ᵀ·rhs`` (a draw from N(0, source⁻¹) for standard normal rhs)."""
        if self.is_diagonal:
            return rhs / self.factor
        return scipy.linalg.solve_triangular(self.factor, rhs, lower=True, trans="T")

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        if self.is_diagonal:
            sq = self.factor**2
            return rhs / sq if rhs.ndim == 1 else rhs / sq[:, None]
        return scipy.linalg.cho_solve((self.factor, True), rhs)

    def logdet(self) -> float:
        diag = self.factor if self.is_diagonal else np.diag(self.factor)
        return float(2.0 * np.sum(np.log(diag)))

    def reconstruct(self) -> np.ndarray:
        if self.is_diagonal:
            return np.diag(self.factor**2)
        return self.factor @ self.factor.T


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """``source = Q·diag(eigenvalues)·Qᵀ`` with eigenvalues ascending.

    Diagonal sources store the sorting permutation in ``order``; the
    eigenvector matrix is then the matching permutation of the identity and is
    only materialised on request.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None
    order: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    def basis(self) -> np.ndarray:
        if self.eigenvectors is not None:
            return self.eigenvectors
        if self.dim > get_tolerances().dense_cap:
            raise DenseCapError("eigenvector basis above the dense cap")
        return np.eye(self.dim)[:, self.order]

    def vector(self, i: int) -> np.ndarray:
        """The i-th eigenvector (ascending eigenvalue order)."""
        if self.eigenvectors is not None:
            return self.eigenvectors[:, i].copy()
        e = np.zeros(self.dim)
        e[self.order[i]] = 1.0
        return e

    def reconstruct(self) -> np.ndarray:
        Q = self.basis()
        return (Q * self.eigenvalues) @ Q.T


def spd_factorize(op: SymmetricOperator) -> SpdFactorization:
    """Cholesky-factorize a symmetric positive definite operator.

    Raises:
        NotPositiveDefiniteError: a pivot is at or below ``d·eps·max|diag|``.
    """
    d = op.dim
    diag = op.diagonal()
    threshold = d * np.finfo(float).eps * max(float(np.max(np.abs(diag))), 0.0)
    if op.is_diagonal:
        bad = np.flatnonzero(diag <= threshold)
        if bad.size:
            raise NotPositiveDefiniteError(
                f"diagonal entry {int(bad[0])} = {diag[bad[0]]:.3e} is not positive",
                pivot=int(bad[0]),
            )
        return SpdFactorization(factor=np.sqrt(diag), source=op)
    try:
        L = scipy.linalg.cholesky(op.dense, lower=True, check_finite=False)
    except scipy.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(f"Cholesky factorization failed: {e}") from e
    pivots = np.diag(L) ** 2
    bad = np.flatnonzero(pivots <= threshold)
    if bad.size:
        raise NotPositiveDefiniteError(
            f"pivot {int(bad[0])} = {pivots[bad[0]]:.3e} below threshold {threshold:.3e}",
            pivot=int(bad[0]),
        )
    return SpdFactorization(factor=L, source=op)


def spectral_decompose(op: SymmetricOperator) -> SpectralDecomposition:
    """Eigen-decompose a symmetric operator, eigenvalues ascending."""
    if op.is_diagonal:
        order = np.argsort(op.diag, kind="stable")
        return SpectralDecomposition(
            eigenvalues=op.diag[order].copy(), eigenvectors=None, order=order
        )
    try:
        w, Q = scipy.linalg.eigh(op.dense, check_finite=False)
    except scipy.linalg.LinAlgError as e:
        raise ConvergenceFailureError(f"symmetric eigensolver failed: {e}") from e
    return SpectralDecomposition(eigenvalues=w, eigenvectors=Q)


def operator_power(op: SymmetricOperator, power: float) -> SymmetricOperator:
    """Symmetric matrix power (e.g. V^{1/2}, V^{-1/2}) for SPD operators."""
    if op.is_diagonal:
        if np.any(op.diag <= 0):
            raise NotPositiveDefiniteError("fractional power of a non-SPD operator")
        return SymmetricOperator.from_diagonal(op.diag**power)
    spec = spectral_decompose(op)
    if spec.eigenvalues[0] <= 0:
        raise NotPositiveDefiniteError("fractional power of a non-SPD operator")
    Q = spec.eigenvectors
    return SymmetricOperator.from_dense((Q * spec.eigenvalues**power) @ Q.T)


def _check_residual(A: np.ndarray, x: np.ndarray, rhs: np.ndarray) -> None:
    tol = get_tolerances().solve_residual
    residual = np.linalg.norm(A @ x - rhs)
    bound = tol * (np.linalg.norm(A) * np.linalg.norm(x) + np.linalg.norm(rhs))
    if not np.isfinite(residual) or residual > bound:
        raise SingularError(
            f"solve residual {residual:.3e} exceeds {bound:.3e}; matrix is singular"
        )


def solve(op: Union[Matrix, SpdFactorization], rhs: np.ndarray) -> np.ndarray:
    """Solve ``op·x = rhs`` for a symmetric operator, factorization or square array.

    ``rhs`` may be a vector or a matrix of right-hand sides.
    """
    rhs = np.asarray(rhs, dtype=float)
    if isinstance(op, SpdFactorization):
        if rhs.shape[0] != op.dim:
            raise DimensionMismatchError("right-hand side length does not match")
        return op.solve(rhs)
    if isinstance(op, SymmetricOperator):
        if rhs.shape[0] != op.dim:
            raise DimensionMismatchError("right-hand side length does not match")
        if op.is_diagonal:
            if np.any(op.diag == 0):
                raise SingularError("diagonal operator has a zero entry")
            return rhs / op.diag if rhs.ndim == 1 else rhs / op.diag[:, None]
        A = op.dense
        assume = "sym"
    else:
        A = np.asarray(op, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got {A.shape}")
        if rhs.shape[0] != A.shape[0]:
            raise DimensionMismatchError("right-hand side length does not match")
        assume = "gen"
    try:
        x = scipy.linalg.solve(A, rhs, assume_a=assume, check_finite=False)
    except scipy.linalg.LinAlgError as e:
        raise SingularError(f"matrix is singular: {e}") from e
    _check_residual(A, x, rhs)
    return x


def _power_iteration(G: np.ndarray) -> float:
    tol = get_tolerances()
    rng = np.random.default_rng(0)
    v = rng.standard_normal(G.shape[0])
    v /= np.linalg.norm(v)
    estimate = 0.0
    for _ in range(tol.power_iteration_cap):
        # Two steps per round so real ±ρ pairs do not oscillate the estimate.
        w = G @ (G @ v)
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        new = float(np.sqrt(norm))
        v = w / norm
        if abs(new - estimate) <= tol.power_iteration_tol * max(new, 1e-300):
            return new
        estimate = new
    raise ConvergenceFailureError(
        "power iteration for the spectral radius did not converge",
        iterations=tol.power_iteration_cap,
    )


def spectral_radius(G: Matrix) -> float:
    """Largest eigenvalue modulus of a (possibly non-symmetric) square matrix."""
    if isinstance(G, SymmetricOperator):
        if G.is_diagonal:
            return float(np.max(np.abs(G.diag)))
        G = G.dense
    G = np.asarray(G, dtype=float)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got {G.shape}")
    if not np.all(np.isfinite(G)):
        raise ValueError("matrix has non-finite entries")
    if G.shape[0] <= get_tolerances().dense_cap:
        try:
            eigenvalues = scipy.linalg.eigvals(G, check_finite=False)
        except scipy.linalg.LinAlgError as e:
            raise ConvergenceFailureError(f"general eigensolver failed: {e}") from e
        return float(np.max(np.abs(eigenvalues)))
    logger.debug("Spectral radius by power iteration, d=%d", G.shape[0])
    return _power_iteration(G)
