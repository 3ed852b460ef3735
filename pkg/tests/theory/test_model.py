"""Tests for the per-mode spectral model."""

import numpy as np
import pytest

from src.exceptions import NotSimultaneouslyDiagonalizableError, StepTooLargeError, UnstableError
from src.linalg import SymmetricOperator
from src.proposals import HmcConfig, LangevinConfig, hmc_proposal, mala, theta_langevin
from src.theory import (
    HmcFamily,
    MalaFamily,
    SpectralSplittingModel,
    ThetaLangevinFamily,
    model_from_dense,
    model_from_family,
)


class TestModelFromFamily:
    """Tests for the closed-form per-mode models."""

    def test_mala_scalar(self):
        """λ² = 1, h = 1: λ̃² = 3/4 and G = 1/2."""
        m = model_from_family(np.array([1.0]), MalaFamily(h=1.0))
        np.testing.assert_allclose(m.lambda2_tilde, [0.75])
        np.testing.assert_allclose(m.G, [0.5])
        np.testing.assert_allclose(m.r, [0.25])
        np.testing.assert_allclose(m.g, [0.75])
        assert m.convergent

    def test_crank_nicolson_has_no_bias(self):
        m = model_from_family(np.array([0.5, 2.0]), ThetaLangevinFamily(h=0.7, theta=0.5))
        np.testing.assert_allclose(m.lambda2_tilde, m.lambda2)
        np.testing.assert_allclose(m.r, 0.0)

    def test_hmc_single_step_is_mala(self):
        lam = np.array([0.3, 1.0, 2.0])
        a = model_from_family(lam, HmcFamily(h=0.5, L=1))
        b = model_from_family(lam, MalaFamily(h=0.25))
        np.testing.assert_allclose(a.G, b.G, atol=1e-12)
        np.testing.assert_allclose(a.lambda2_tilde, b.lambda2_tilde, atol=1e-12)

    def test_langevin_step_too_large(self):
        with pytest.raises(StepTooLargeError):
            model_from_family(np.array([1.0, 5.0]), MalaFamily(h=1.0))

    def test_hmc_unstable(self):
        with pytest.raises(UnstableError):
            model_from_family(np.array([5.0]), HmcFamily(h=1.0, L=2))

    def test_means_default_to_zero(self):
        m = model_from_family(np.ones(3), MalaFamily(h=0.1))
        np.testing.assert_array_equal(m.r_hat, np.zeros(3))

    def test_unknown_family(self):
        with pytest.raises(TypeError):
            model_from_family(np.ones(2), object())


class TestModelFromDense:
    """Tests for simultaneous diagonalization of explicit splittings."""

    def test_diagonal_matches_family(self, diag_target):
        _, s = mala(diag_target, 0.6)
        dense = model_from_dense(diag_target, s)
        fam = model_from_family(np.sort(diag_target.precision.diag), MalaFamily(h=0.6))
        np.testing.assert_allclose(dense.G, fam.G, atol=1e-12)
        np.testing.assert_allclose(dense.lambda2_tilde, fam.lambda2_tilde, atol=1e-12)
        np.testing.assert_allclose(dense.r_hat, 0.0, atol=1e-12)

    def test_dense_matches_family(self, dense_target):
        _, s = theta_langevin(dense_target, LangevinConfig(h=0.5, theta=0.3))
        dense = model_from_dense(dense_target, s)
        lam = np.linalg.eigvalsh(dense_target.precision.dense)
        fam = model_from_family(lam, ThetaLangevinFamily(h=0.5, theta=0.3))
        np.testing.assert_allclose(dense.G, fam.G, atol=1e-9)
        np.testing.assert_allclose(dense.lambda2_tilde, fam.lambda2_tilde, atol=1e-9)

    def test_hmc_dense(self, dense_target):
        _, s = hmc_proposal(dense_target, HmcConfig(h=0.4, L=2))
        dense = model_from_dense(dense_target, s)
        lam = np.linalg.eigvalsh(dense_target.precision.dense)
        fam = model_from_family(lam, HmcFamily(h=0.4, L=2))
        np.testing.assert_allclose(dense.G, fam.G, atol=1e-9)
        np.testing.assert_allclose(dense.lambda2_tilde, fam.lambda2_tilde, atol=1e-9)

    def test_non_commuting_preconditioner(self, dense_target):
        V = SymmetricOperator.from_diagonal(np.array([1.0, 0.3, 2.0]))
        _, s = theta_langevin(dense_target, LangevinConfig(h=0.3, theta=0.2, V=V))
        with pytest.raises(NotSimultaneouslyDiagonalizableError):
            model_from_dense(dense_target, s)


class TestSpectralSplittingModel:
    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            SpectralSplittingModel(
                lambda2=[1.0, 2.0], lambda2_tilde=[1.0], G=[0.5, 0.5], m=[0, 0], m_tilde=[0, 0]
            )

    def test_non_positive_eigenvalue(self):
        with pytest.raises(ValueError):
            SpectralSplittingModel(lambda2=[0.0], lambda2_tilde=[1.0], G=[0.5], m=[0], m_tilde=[0])
