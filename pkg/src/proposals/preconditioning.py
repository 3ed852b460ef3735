"""Preconditioner helpers shared by the Langevin and HMC families."""
from __future__ import annotations

from typing import Optional

import numpy as np

from src.linalg import (
    SymmetricOperator,
    as_operator,
    operator_power,
    spd_factorize,
    spectral_decompose,
)
from src.target import GaussianTarget


def resolve_preconditioner(
    target: GaussianTarget, V: Optional[np.ndarray | SymmetricOperator]
) -> SymmetricOperator:
    """Return ``V`` as an SPD operator, the identity when omitted."""
    if V is None:
        return SymmetricOperator.identity(target.dim)
    op = as_operator(V)
    if op.dim != target.dim:
        raise ValueError(
            f"preconditioner has dimension {op.dim}, target has {target.dim}"
        )
    spd_factorize(op)
    return op


def precision_inverse(target: GaussianTarget) -> SymmetricOperator:
    """``V = A⁻¹`` for the preconditioned Crank-Nicolson style proposals."""
    if target.is_diagonal:
        return SymmetricOperator.from_diagonal(1.0 / target.precision.diag)
    return SymmetricOperator.from_dense(target.covariance())


def preconditioned_precision(
    target: GaussianTarget, V: SymmetricOperator
) -> SymmetricOperator:
    """``B = V^{1/2}·A·V^{1/2}``, similar to ``V·A``."""
    if target.is_diagonal and V.is_diagonal:
        return SymmetricOperator.from_diagonal(V.diag * target.precision.diag)
    root = operator_power(V, 0.5).to_dense()
    return SymmetricOperator.from_dense(root @ target.precision.to_dense() @ root)


def preconditioned_eigenvalues(
    target: GaussianTarget, V: SymmetricOperator
) -> np.ndarray:
    """Eigenvalues of ``V·A`` in ascending order."""
    B = preconditioned_precision(target, V)
    if B.is_diagonal:
        return np.sort(B.diag)
    return spectral_decompose(B).eigenvalues
