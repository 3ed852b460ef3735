"""Symmetric operators in dense or diagonal form."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from src.config import get_tolerances
from src.exceptions import DenseCapError, DimensionMismatchError


@dataclass(frozen=True, eq=False)
class SymmetricOperator:
    """A real symmetric d×d operator.

    Exactly one of ``dense`` (d×d array) or ``diag`` (length-d vector) is set.
    Build instances with :meth:`from_dense`, :meth:`from_diagonal` or
    :meth:`identity` so the symmetry invariant is enforced.
    """

    dense: np.ndarray | None = None
    diag: np.ndarray | None = None

    def __post_init__(self) -> None:
        if (self.dense is None) == (self.diag is None):
            raise ValueError("exactly one of dense or diag must be given")
        if self.dense is not None:
            if self.dense.ndim != 2 or self.dense.shape[0] != self.dense.shape[1]:
                raise DimensionMismatchError(
                    f"dense operator must be square, got shape {self.dense.shape}"
                )
        elif self.diag.ndim != 1 or self.diag.size == 0:
            raise DimensionMismatchError(
                f"diagonal operator needs a non-empty vector, got {self.diag.shape}"
            )

    @classmethod
    def from_dense(cls, matrix: np.ndarray) -> SymmetricOperator:
        """Symmetrize ``(X + Xᵀ)/2``; reject inputs that are far from symmetric."""
        X = np.array(matrix, dtype=float)
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got {X.shape}")
        tol = get_tolerances()
        if X.shape[0] > tol.dense_cap:
            raise DenseCapError(
                f"dense dimension {X.shape[0]} exceeds cap {tol.dense_cap}"
            )
        if not np.all(np.isfinite(X)):
            raise ValueError("matrix has non-finite entries")
        sym = 0.5 * (X + X.T)
        correction = float(np.max(np.abs(sym - X))) if X.size else 0.0
        scale = max(1.0, float(np.max(np.abs(X))))
        if correction > tol.symmetry_reject * scale:
            raise ValueError(
                f"matrix is not symmetric (max asymmetry {correction:.3e})"
            )
        sym.setflags(write=False)
        return cls(dense=sym)

    @classmethod
    def from_diagonal(cls, values: np.ndarray) -> SymmetricOperator:
        v = np.array(values, dtype=float).reshape(-1)
        if not np.all(np.isfinite(v)):
            raise ValueError("diagonal has non-finite entries")
        v.setflags(write=False)
        return cls(diag=v)

    @classmethod
    def identity(cls, dim: int) -> SymmetricOperator:
        if dim < 1:
            raise ValueError("dimension must be positive")
        return cls.from_diagonal(np.ones(dim))

    @property
    def dim(self) -> int:
        return self.diag.size if self.is_diagonal else self.dense.shape[0]

    @property
    def is_diagonal(self) -> bool:
        return self.diag is not None

    def diagonal(self) -> np.ndarray:
        return self.diag if self.is_diagonal else np.diag(self.dense).copy()

    def to_dense(self) -> np.ndarray:
        if self.is_diagonal:
            if self.dim > get_tolerances().dense_cap:
                raise DenseCapError(
                    f"cannot densify dimension {self.dim} above the dense cap"
                )
            return np.diag(self.diag)
        return self.dense

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.dim:
            raise DimensionMismatchError(
                f"vector of length {x.shape[0]} for operator of dimension {self.dim}"
            )
        if self.is_diagonal:
            return self.diag * x if x.ndim == 1 else self.diag[:, None] * x
        return self.dense @ x

    def quadratic(self, x: np.ndarray) -> float:
        """Return ``xᵀ·op·x``."""
        return float(np.dot(x, self.matvec(x)))

    def trace(self) -> float:
        return float(np.sum(self.diagonal()))

    def max_abs(self) -> float:
        data = self.diag if self.is_diagonal else self.dense
        return float(np.max(np.abs(data)))

    def scaled(self, factor: float) -> SymmetricOperator:
        if self.is_diagonal:
            return SymmetricOperator.from_diagonal(factor * self.diag)
        return SymmetricOperator.from_dense(factor * self.dense)

    def is_identity(self) -> bool:
        if self.is_diagonal:
            return bool(np.all(self.diag == 1.0))
        return bool(np.array_equal(self.dense, np.eye(self.dim)))


Matrix = Union[np.ndarray, SymmetricOperator]


def to_dense(op: Matrix) -> np.ndarray:
    """Dense array for a SymmetricOperator or a general square array."""
    if isinstance(op, SymmetricOperator):
        return op.to_dense()
    return np.asarray(op, dtype=float)


def matvec(op: Matrix, x: np.ndarray) -> np.ndarray:
    if isinstance(op, SymmetricOperator):
        return op.matvec(x)
    return np.asarray(op) @ x


def dim_of(op: Matrix) -> int:
    if isinstance(op, SymmetricOperator):
        return op.dim
    return np.asarray(op).shape[0]


def is_diagonal(op: Matrix) -> bool:
    return isinstance(op, SymmetricOperator) and op.is_diagonal


def as_operator(op: Matrix) -> SymmetricOperator:
    """Wrap a symmetric array as an operator; operators pass through."""
    if isinstance(op, SymmetricOperator):
        return op
    return SymmetricOperator.from_dense(op)
