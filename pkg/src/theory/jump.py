"""Expected squared jump size along one eigen-direction."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.theory.acceptance import (
    AcceptancePrediction,
    expected_alpha_gaussian,
    predict_acceptance,
)
from src.theory.model import SpectralSplittingModel


@dataclass(frozen=True)
class JumpPrediction:
    """``E[(qᵢᵀ(x′−x))²] ≈ U₁·U₂`` with ``|U₃|`` bounding the remainder."""

    mode: int
    U1: float
    U2: float
    U3_bound: float
    mu_minus: float
    sigma2_minus: float

    @property
    def esjd(self) -> float:
        return self.U1 * self.U2

    def interval(self) -> tuple[float, float]:
        return self.esjd - self.U3_bound, self.esjd + self.U3_bound


def predict_jump(
    model: SpectralSplittingModel,
    i: int,
    prediction: Optional[AcceptancePrediction] = None,
) -> JumpPrediction:
    """Jump prediction for mode ``i`` using leave-one-out sums over the others.

    ``prediction`` may be passed to reuse T-terms already computed for
    ``model``.

    Raises:
        NegativeRadicandError: propagated from the T-terms.
    """
    if model.dim < 2:
        raise ValueError("jump prediction needs at least two modes")
    if not 0 <= i < model.dim:
        raise IndexError(f"mode {i} out of range for dimension {model.dim}")
    if prediction is None:
        prediction = predict_acceptance(model)

    others = np.arange(model.dim) != i
    mu_minus = math.fsum(prediction.mode_mu[others])
    sigma2_minus = max(0.0, math.fsum(prediction.mode_sigma2[others]))

    lam2 = float(model.lambda2[i])
    lam2_t = float(model.lambda2_tilde[i])
    gt = float(model.g_tilde[i])
    g = float(model.g[i])
    rh = float(model.r_hat[i])

    U1 = gt**2 * rh**2 + gt**2 / lam2 + g / lam2_t
    U2 = expected_alpha_gaussian(mu_minus, math.sqrt(sigma2_minus))
    fourth = (
        gt**4 * rh**4
        + 3.0 * gt**4 / lam2**2
        + 3.0 * g**2 / lam2_t**2
        + 6.0 * gt**4 * rh**2 / lam2
        + 6.0 * gt**2 * g * rh**2 / lam2_t
        + 6.0 * gt**2 * g / (lam2 * lam2_t)
    )
    mu_i = float(prediction.mode_mu[i])
    sigma2_i = float(prediction.mode_sigma2[i])
    U3 = math.sqrt(sigma2_i + mu_i**2) * math.sqrt(fourth)
    return JumpPrediction(
        mode=i,
        U1=U1,
        U2=U2,
        U3_bound=U3,
        mu_minus=mu_minus,
        sigma2_minus=sigma2_minus,
    )
