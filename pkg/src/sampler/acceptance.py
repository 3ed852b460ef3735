"""Metropolis-Hastings log acceptance ratios for AR(1) proposals."""
from __future__ import annotations

import numpy as np

from src.exceptions import DimensionMismatchError, NotSymmetricSplittingError
from src.splitting import Ar1Proposal, MatrixSplitting
from src.target import GaussianTarget, LogDensity


def log_accept_ratio_quadratic(
    target: GaussianTarget,
    splitting: MatrixSplitting,
    x: np.ndarray,
    y: np.ndarray,
) -> float:
    """``Z = −½yᵀ(A−𝒜)y + ½xᵀ(A−𝒜)x + (b−β)ᵀ(y−x)`` for symmetric splittings.

    Raises:
        NotSymmetricSplittingError: ``M`` or ``N`` is not symmetric.
    """
    if not splitting.symmetric:
        raise NotSymmetricSplittingError(
            "quadratic acceptance ratio needs a symmetric splitting"
        )
    if x.shape != (target.dim,) or y.shape != (target.dim,):
        raise DimensionMismatchError("state dimension does not match the target")
    A, P = target.precision, splitting.precision
    qy = A.quadratic(y) - P.quadratic(y)
    qx = A.quadratic(x) - P.quadratic(x)
    return -0.5 * qy + 0.5 * qx + float(np.dot(target.shift - splitting.beta, y - x))


def _transition_log_density(p: Ar1Proposal, start: np.ndarray, end: np.ndarray) -> float:
    """``log N(end; G·start + g, Σ)`` up to the constant shared by both directions."""
    r = p.noise.solve_factor(end - p.mean_step(start))
    return -0.5 * float(np.dot(r, r))


def log_accept_ratio_generic(
    log_density: LogDensity,
    p: Ar1Proposal,
    x: np.ndarray,
    y: np.ndarray,
) -> float:
    """``log π(y) − log π(x) + log q(y→x) − log q(x→y)``.

    Raises:
        EvaluationFailureError: from ``log_density``.
    """
    return (
        log_density(y)
        - log_density(x)
        + _transition_log_density(p, y, x)
        - _transition_log_density(p, x, y)
    )
