"""Finite-dimensional acceptance-rate prediction from per-mode T-terms.

In equilibrium the log acceptance ratio splits into independent per-mode
contributions ``Zᵢ = T₀ᵢ + T₁ᵢξ + T₂ᵢν + T₃ᵢξ² + T₄ᵢν² + T₅ᵢξν`` with ξ, ν
standard normal. Summing their means and variances gives the Gaussian
approximation ``Z ≈ N(μ, σ²)`` and ``E[1 ∧ e^Z]`` in closed form.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtr

from src.config import get_tolerances
from src.exceptions import NegativeRadicandError
from src.theory.model import SpectralSplittingModel

logger = logging.getLogger(__name__)

PER_MODE_REPORT_CAP = 64
LYAPUNOV_WARN = 0.5


def t_term_arrays(model: SpectralSplittingModel) -> np.ndarray:
    """Return the 6×d array of ``T₀ᵢ … T₅ᵢ``.

    Raises:
        NegativeRadicandError: ``1 + r̃ᵢ < 0`` (λ̃ᵢ² ≤ 0) or ``gᵢ < 0``.
    """
    g = model.g
    one_plus_r_tilde = model.lambda2 / model.lambda2_tilde
    bad = ~np.isfinite(one_plus_r_tilde) | (one_plus_r_tilde < 0) | (g < 0)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise NegativeRadicandError(
            f"mode {i}: λ̃² = {model.lambda2_tilde[i]:.6g}, G = {model.G[i]:.6g}",
            mode=i,
        )
    lam, r, r_hat, g_tilde, G = model.lam, model.r, model.r_hat, model.g_tilde, model.G
    root = np.sqrt(g) * np.sqrt(one_plus_r_tilde)
    return np.stack([
        r_hat**2 * model.lambda2 * (0.5 * r * g - g_tilde),
        r_hat * lam * (r * g - g_tilde),
        r_hat * lam * root * (1.0 - r * G),
        0.5 * r * g,
        -0.5 * r * g * one_plus_r_tilde,
        -r * G * root,
    ])


def t_terms(model: SpectralSplittingModel, i: int) -> tuple[float, ...]:
    """``(T₀ᵢ, …, T₅ᵢ)`` for one mode."""
    if not 0 <= i < model.dim:
        raise IndexError(f"mode {i} out of range for dimension {model.dim}")
    return tuple(float(v) for v in t_term_arrays(model)[:, i])


def mode_moments(T: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-mode mean ``μᵢ`` and variance ``σᵢ²`` of ``Zᵢ``."""
    mu = T[0] + T[3] + T[4]
    sigma2 = T[1] ** 2 + T[2] ** 2 + 2.0 * T[3] ** 2 + 2.0 * T[4] ** 2 + T[5] ** 2
    return mu, sigma2


def expected_alpha_gaussian(mu: float, sigma: float) -> float:
    """``E[1 ∧ e^X]`` for ``X ~ N(μ, σ²)``.

    ``Φ(μ/σ) + exp(μ + σ²/2 + log Φ(−σ − μ/σ))``, with the second term in log
    space so a large ``μ + σ²/2`` does not overflow.
    """
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    if sigma < get_tolerances().degenerate_sigma:
        return 1.0 if mu >= 0 else math.exp(mu)
    ratio = mu / sigma
    value = float(ndtr(ratio)) + math.exp(mu + 0.5 * sigma**2 + float(log_ndtr(-sigma - ratio)))
    return min(1.0, max(0.0, value))


def lyapunov_ratios(T: np.ndarray, delta: float = 1.0) -> tuple[float, ...]:
    """``Σ|Tⱼᵢ|^{2+δ} / (ΣTⱼᵢ²)^{1+δ/2}`` for ``j = 1..5``; zero when degenerate."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    ratios = []
    for j in range(1, 6):
        row = np.abs(T[j])
        denom = math.fsum(row**2)
        if denom == 0.0:
            ratios.append(0.0)
            continue
        ratios.append(math.fsum(row ** (2.0 + delta)) / denom ** (1.0 + 0.5 * delta))
    return tuple(ratios)


@dataclass(frozen=True, eq=False)
class AcceptancePrediction:
    """Gaussian approximation of the log acceptance ratio and its consequences."""

    terms: np.ndarray
    mode_mu: np.ndarray
    mode_sigma2: np.ndarray
    mu: float
    sigma2: float
    acceptance: float
    lyapunov: tuple[float, ...]
    delta: float

    @property
    def dim(self) -> int:
        return self.terms.shape[1]

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    def to_report(self) -> dict:
        report = {
            "mu": self.mu,
            "sigma2": self.sigma2,
            "acceptance": self.acceptance,
            "lyapunov": list(self.lyapunov),
            "delta": self.delta,
        }
        if self.dim <= PER_MODE_REPORT_CAP:
            report["per_mode"] = [
                {"i": i, "T": [float(v) for v in self.terms[:, i]]}
                for i in range(self.dim)
            ]
        return report


def predict_acceptance(
    model: SpectralSplittingModel, delta: float = 1.0
) -> AcceptancePrediction:
    """Expected acceptance rate in equilibrium from the mode sums ``μ``, ``σ²``.

    The Lyapunov ratios are reported as diagnostics; large values are logged
    but never refused.
    """
    T = t_term_arrays(model)
    mode_mu, mode_sigma2 = mode_moments(T)
    mu = math.fsum(mode_mu)
    sigma2 = max(0.0, math.fsum(mode_sigma2))
    ratios = lyapunov_ratios(T, delta)
    if max(ratios) > LYAPUNOV_WARN:
        logger.warning(
            "Lyapunov ratios %s are large at d=%d; the Gaussian approximation "
            "of the acceptance ratio may be poor",
            ", ".join(f"{x:.3g}" for x in ratios),
            model.dim,
        )
    return AcceptancePrediction(
        terms=T,
        mode_mu=mode_mu,
        mode_sigma2=mode_sigma2,
        mu=mu,
        sigma2=sigma2,
        acceptance=expected_alpha_gaussian(mu, math.sqrt(sigma2)),
        lyapunov=ratios,
        delta=delta,
    )
