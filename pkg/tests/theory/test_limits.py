"""Tests for large-dimension limits and step-size scaling."""

import math

import numpy as np
import pytest
from scipy.stats import norm

from src.linalg import SymmetricOperator
from src.target import GaussianTarget
from src.theory import (
    ScalingLaw,
    asymptotic_limits,
    mode_directions,
    optimal_langevin_scale,
    scale_for_acceptance,
    scaling_exponent,
    tau_from_lambdas,
)


class TestScaling:
    """Tests for the dimension scaling of the step size."""

    def test_exponents(self):
        assert scaling_exponent("mala") == pytest.approx(1.0 / 3.0)
        assert scaling_exponent("theta_langevin", 0.5) == pytest.approx(4.0 / 3.0)
        assert scaling_exponent("hmc", 0.5) == pytest.approx(0.75)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            scaling_exponent("gibbs")

    def test_steps(self):
        assert ScalingLaw("mala", l=2.0).step(8) == pytest.approx(2.0)
        assert ScalingLaw("hmc", l=2.0).step(16) == pytest.approx(1.0)

    def test_validation(self):
        with pytest.raises(ValueError):
            ScalingLaw("mala", l=0.0)
        with pytest.raises(ValueError):
            ScalingLaw("mala", l=1.0).step(0)


class TestAsymptoticLimits:
    """Tests for the closed-form limits."""

    def test_mala(self):
        lim = asymptotic_limits("mala", 1.0)
        assert lim.acceptance == pytest.approx(2.0 * norm.cdf(-1.0 / 8.0))
        assert lim.jump(8) == pytest.approx(0.5 * lim.acceptance)

    def test_theta_is_ignored_for_mala(self):
        assert asymptotic_limits("mala", 1.0, theta=0.5).acceptance < 1.0

    def test_crank_nicolson_accepts_everything(self):
        assert asymptotic_limits("theta_langevin", 3.0, theta=0.5).acceptance == 1.0

    def test_hmc(self):
        lim = asymptotic_limits("hmc", 2.0, T=1.0)
        assert lim.acceptance == pytest.approx(2.0 * norm.cdf(-4.0 / (8.0 * math.sqrt(2.0))))
        assert lim.jump(100, lam=2.0) == pytest.approx(0.5 * (1 - math.cos(2.0)) * lim.acceptance)

    def test_hmc_jump_needs_time(self):
        with pytest.raises(ValueError):
            asymptotic_limits("hmc", 1.0).jump(10)

    def test_optimal_scale(self):
        s = optimal_langevin_scale()
        assert s == pytest.approx(0.8252, abs=1e-3)
        assert 2.0 * norm.cdf(-(s**3)) == pytest.approx(0.574, abs=1e-3)


class TestScaleForAcceptance:
    """Tests for inverting the limiting acceptance rate."""

    def test_reference_values(self):
        assert scale_for_acceptance("hmc", 0.651) == pytest.approx(2.262, abs=1e-3)
        assert scale_for_acceptance("mala", 0.574) == pytest.approx(2 * 0.8252, abs=2e-3)

    @pytest.mark.parametrize("family,theta", [("mala", 0.0), ("theta_langevin", 0.2), ("hmc", 0.0)])
    def test_inverts_limit(self, family, theta):
        l = scale_for_acceptance(family, 0.4, kappa=0.25, theta=theta)
        limits = asymptotic_limits(family, l, kappa=0.25, theta=theta)
        assert limits.acceptance == pytest.approx(0.4)

    def test_crank_nicolson_has_no_scale(self):
        with pytest.raises(ValueError):
            scale_for_acceptance("theta_langevin", 0.5, theta=0.5)

    def test_range(self):
        with pytest.raises(ValueError):
            scale_for_acceptance("mala", 1.0)


class TestTauAndModes:
    def test_tau_identity(self):
        assert tau_from_lambdas(np.ones(50)) == pytest.approx(1.0)

    def test_tau_power(self):
        kappa, d = 0.5, 200
        lam2 = np.arange(1, d + 1, dtype=float) ** (2 * kappa)
        expected = np.sum(lam2**3) / d ** (1 + 6 * kappa)
        assert tau_from_lambdas(lam2, kappa) == pytest.approx(expected)
        assert tau_from_lambdas(lam2, kappa) == pytest.approx(1.0 / 4.0, rel=0.05)

    def test_diagonal_modes_follow_sorted_eigenvalues(self):
        target = GaussianTarget.diagonal(np.array([3.0, 1.0, 2.0]))
        dirs = mode_directions(target, [0, 2])
        np.testing.assert_allclose(dirs["mode0"], [0.0, 1.0, 0.0])
        np.testing.assert_allclose(dirs["mode2"], [1.0, 0.0, 0.0])

    def test_preconditioned_modes(self, dense_target):
        """Projections use V^{-1/2}q, eigenvectors of A·V."""
        V = SymmetricOperator.from_diagonal(np.array([1.0, 0.5, 2.0]))
        dirs = mode_directions(dense_target, [0, 1], V)
        AV = dense_target.precision.dense @ V.to_dense()
        for w in dirs.values():
            lam = float(w @ AV @ w) / float(w @ w)
            np.testing.assert_allclose(AV @ w, lam * w, atol=1e-9)

    def test_out_of_range(self, diag_target):
        with pytest.raises(IndexError):
            mode_directions(diag_target, [3])
