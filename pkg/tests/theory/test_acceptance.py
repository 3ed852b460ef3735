"""Tests for the acceptance-rate prediction."""

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import norm

from src.exceptions import NegativeRadicandError
from src.theory import (
    MalaFamily,
    SpectralSplittingModel,
    ThetaLangevinFamily,
    asymptotic_limits,
    expected_alpha_gaussian,
    lyapunov_ratios,
    model_from_family,
    predict_acceptance,
    t_term_arrays,
    t_terms,
)


def _quadrature(mu: float, sigma: float) -> float:
    value, _ = quad(
        lambda x: min(1.0, math.exp(x)) * norm.pdf(x, mu, sigma),
        mu - 12 * sigma,
        mu + 12 * sigma,
        points=[0.0],
        limit=200,
    )
    return value


class TestExpectedAlpha:
    """Tests for E[1 ∧ e^X] with Gaussian X."""

    @pytest.mark.parametrize("mu,sigma", [(-0.5, 1.2), (-3.0, 2.5), (0.4, 0.3), (-20.0, 6.0)])
    def test_matches_quadrature(self, mu, sigma):
        assert expected_alpha_gaussian(mu, sigma) == pytest.approx(_quadrature(mu, sigma), abs=1e-7)

    def test_equilibrium_relation(self):
        """μ = −σ²/2 gives 2Φ(−σ/2)."""
        sigma = 1.3
        expected = 2.0 * norm.cdf(-sigma / 2.0)
        assert expected_alpha_gaussian(-0.5 * sigma**2, sigma) == pytest.approx(expected, rel=1e-12)

    def test_degenerate_sigma(self):
        assert expected_alpha_gaussian(-0.7, 0.0) == pytest.approx(math.exp(-0.7))
        assert expected_alpha_gaussian(0.3, 0.0) == 1.0

    def test_large_mean_does_not_overflow(self):
        assert expected_alpha_gaussian(800.0, 40.0) == pytest.approx(1.0)

    def test_negative_sigma(self):
        with pytest.raises(ValueError):
            expected_alpha_gaussian(0.0, -1.0)


class TestTTerms:
    """Tests for the per-mode T-terms."""

    def test_zero_offset_kills_linear_terms(self):
        model = model_from_family(np.array([1.0, 2.0]), MalaFamily(h=0.5))
        T = t_term_arrays(model)
        np.testing.assert_array_equal(T[0], 0.0)
        np.testing.assert_array_equal(T[1], 0.0)
        np.testing.assert_array_equal(T[2], 0.0)

    def test_single_mode_accessor(self):
        model = model_from_family(
            np.array([1.0, 2.0]), MalaFamily(h=0.5), means=np.array([0.3, -1.0])
        )
        T = t_term_arrays(model)
        assert t_terms(model, 1) == pytest.approx(tuple(T[:, 1]))
        with pytest.raises(IndexError):
            t_terms(model, 2)

    def test_negative_radicand(self):
        model = SpectralSplittingModel(
            lambda2=[1.0], lambda2_tilde=[1.0], G=[1.5], m=[0.0], m_tilde=[0.0]
        )
        with pytest.raises(NegativeRadicandError) as exc:
            t_term_arrays(model)
        assert exc.value.mode == 0


class TestPredictAcceptance:
    """Tests for the Gaussian approximation of the acceptance rate."""

    def test_crank_nicolson_accepts_everything(self):
        model = model_from_family(np.linspace(0.5, 3.0, 10), ThetaLangevinFamily(h=0.9, theta=0.5))
        pred = predict_acceptance(model)
        assert pred.mu == 0.0
        assert pred.sigma2 == 0.0
        assert pred.acceptance == 1.0

    def test_approaches_limit(self):
        """MALA on the identity at h = l²d^{−1/3} tends to 2Φ(−l³/8)."""
        d, l = 100000, 1.2
        model = model_from_family(np.ones(d), MalaFamily(h=l**2 * d ** (-1.0 / 3.0)))
        pred = predict_acceptance(model)
        limit = asymptotic_limits("mala", l).acceptance
        assert pred.acceptance == pytest.approx(limit, abs=0.01)
        assert pred.mu == pytest.approx(-0.5 * pred.sigma2, rel=0.1)

    def test_acceptance_decreases_with_step(self):
        lam = np.ones(50)
        rates = [predict_acceptance(model_from_family(lam, MalaFamily(h=h))).acceptance
                 for h in (0.1, 0.3, 0.6)]
        assert rates[0] > rates[1] > rates[2]

    def test_mean_offset_lowers_acceptance(self):
        lam = np.ones(20)
        centred = model_from_family(lam, MalaFamily(h=0.4))
        shifted = SpectralSplittingModel(
            lambda2=lam, lambda2_tilde=centred.lambda2_tilde, G=centred.G,
            m=np.zeros(20), m_tilde=np.full(20, 0.5),
        )
        assert predict_acceptance(shifted).acceptance < predict_acceptance(centred).acceptance

    def test_lyapunov_ratios_shrink(self):
        """Identical modes give ratios 1/√d."""
        model = model_from_family(np.ones(100), MalaFamily(h=0.2))
        pred = predict_acceptance(model)
        assert pred.lyapunov[0] == 0.0
        assert pred.lyapunov[4] == pytest.approx(0.1)

    def test_small_d_warns(self, caplog):
        predict_acceptance(model_from_family(np.ones(2), MalaFamily(h=0.5)))
        assert "Lyapunov ratios" in caplog.text

    def test_lyapunov_delta_validation(self):
        with pytest.raises(ValueError):
            lyapunov_ratios(np.zeros((6, 2)), delta=0.0)

    def test_report(self):
        pred = predict_acceptance(model_from_family(np.ones(3), MalaFamily(h=0.5)))
        report = pred.to_report()
        assert set(report) >= {"mu", "sigma2", "acceptance", "lyapunov", "per_mode"}
        assert len(report["per_mode"]) == 3
        assert len(report["per_mode"][0]["T"]) == 6
