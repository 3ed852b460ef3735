"""Tests for AR(1) proposals, matrix splittings and their conversions."""

import numpy as np
import pytest

from src.exceptions import (
    DimensionMismatchError,
    NotConvergentError,
    NotSymmetrizableError,
    SingularError,
)
from src.linalg import SymmetricOperator
from src.sampler import RandomStream
from src.splitting import (
    Ar1Proposal,
    MatrixSplitting,
    ar1_to_splitting,
    proposal_target,
    splitting_to_ar1,
    stationary_covariance,
    symmetric_ar1_to_splitting,
)
from tests.helpers import random_spd


def _diag(*values):
    return SymmetricOperator.from_diagonal(np.array(values, dtype=float))


@pytest.fixture
def scalar_ar1() -> Ar1Proposal:
    """G = 1/2, Σ = 3/4: proposal target has unit precision."""
    return Ar1Proposal(G=_diag(0.5), g=np.array([0.0]), Sigma=_diag(0.75))


@pytest.fixture
def nonsymmetric_ar1() -> Ar1Proposal:
    G = np.array([[0.5, 0.2], [0.0, 0.3]])
    return Ar1Proposal(G=G, g=np.array([0.1, -0.2]), Sigma=SymmetricOperator.identity(2))


class TestAr1Proposal:
    """Tests for the AR(1) proposal record."""

    def test_mean_step(self, scalar_ar1):
        np.testing.assert_allclose(scalar_ar1.mean_step(np.array([2.0])), [1.0])

    def test_propose_reproducible(self, scalar_ar1):
        a = scalar_ar1.propose(np.array([1.0]), RandomStream(3, 0))
        b = scalar_ar1.propose(np.array([1.0]), RandomStream(3, 0))
        np.testing.assert_array_equal(a, b)

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatchError):
            Ar1Proposal(G=np.eye(2), g=np.zeros(3), Sigma=SymmetricOperator.identity(2))
        with pytest.raises(DimensionMismatchError):
            Ar1Proposal(G=np.eye(3), g=np.zeros(2), Sigma=SymmetricOperator.identity(2))

    def test_spectral_radius(self, nonsymmetric_ar1):
        assert nonsymmetric_ar1.spectral_radius() == pytest.approx(0.5)


class TestMatrixSplitting:
    """Tests for derived splitting quantities."""

    def test_scalar_quantities(self):
        s = MatrixSplitting(M=_diag(2.0), N=_diag(1.0), beta=np.array([0.0]))
        np.testing.assert_allclose(s.precision.diag, [1.0])
        np.testing.assert_allclose(s.noise_covariance.diag, [3.0])
        assert s.radius == pytest.approx(0.5)
        assert s.convergent
        assert s.symmetric
        assert s.precision_factor is not None

    def test_zero_diagonal_in_m(self):
        with pytest.raises(SingularError):
            MatrixSplitting(M=_diag(0.0), N=_diag(1.0), beta=np.zeros(1))

    def test_non_convergent_is_not_factorized(self):
        s = MatrixSplitting(M=_diag(1.0), N=_diag(-1.5), beta=np.zeros(1))
        assert not s.convergent
        assert s.precision_factor is None
        with pytest.raises(NotConvergentError) as exc:
            s.require_convergent()
        assert exc.value.spectral_radius == pytest.approx(1.5)

    def test_nonsymmetric_flag(self):
        M = np.array([[2.0, 0.0], [0.5, 2.0]])
        N = M - np.eye(2)
        s = MatrixSplitting(M=M, N=N, beta=np.zeros(2))
        assert not s.symmetric
        np.testing.assert_allclose(s.precision.to_dense(), np.eye(2))

    def test_as_ar1_is_cached(self):
        s = MatrixSplitting(M=_diag(2.0), N=_diag(1.0), beta=np.array([1.0]))
        p = s.as_ar1()
        assert s.as_ar1() is p
        np.testing.assert_allclose(p.g, [0.5])


class TestConversions:
    """Tests for AR(1) to splitting conversions and back."""

    def test_symmetric_scalar(self, scalar_ar1):
        s = symmetric_ar1_to_splitting(scalar_ar1)
        np.testing.assert_allclose(s.M.diag, [2.0])
        np.testing.assert_allclose(s.N.diag, [1.0])
        np.testing.assert_allclose(s.precision.diag, [1.0])

    def test_general_scalar_matches_symmetric(self, scalar_ar1):
        a = ar1_to_splitting(scalar_ar1)
        b = symmetric_ar1_to_splitting(scalar_ar1)
        np.testing.assert_allclose(a.precision.diag, b.precision.diag)

    def test_general_roundtrip(self, nonsymmetric_ar1):
        s = ar1_to_splitting(nonsymmetric_ar1)
        back = splitting_to_ar1(s)
        np.testing.assert_allclose(back.G, nonsymmetric_ar1.G, atol=1e-9)
        np.testing.assert_allclose(back.g, nonsymmetric_ar1.g, atol=1e-9)
        np.testing.assert_allclose(back.Sigma.to_dense(), np.eye(2), atol=1e-9)

    def test_general_precision_is_inverse_stationary_covariance(self, nonsymmetric_ar1):
        s = ar1_to_splitting(nonsymmetric_ar1)
        C = stationary_covariance(nonsymmetric_ar1.G, np.eye(2))
        np.testing.assert_allclose(s.precision.to_dense() @ C, np.eye(2), atol=1e-9)

    def test_symmetric_rejects_nonsymmetric_product(self, nonsymmetric_ar1):
        with pytest.raises(NotSymmetrizableError):
            symmetric_ar1_to_splitting(nonsymmetric_ar1)

    def test_symmetric_dense(self, rng):
        """G·Σ symmetric: both conversions agree on the precision."""
        A = random_spd(rng, 3, 0.5, 1.5)
        G = np.eye(3) - 0.25 * A
        p = Ar1Proposal(G=G, g=np.zeros(3), Sigma=SymmetricOperator.from_dense(0.5 * np.eye(3)))
        sym = symmetric_ar1_to_splitting(p)
        gen = ar1_to_splitting(p)
        np.testing.assert_allclose(sym.precision.to_dense(), gen.precision.to_dense(), atol=1e-8)
        assert sym.symmetric

    def test_non_convergent_rejected(self):
        p = Ar1Proposal(G=_diag(1.0), g=np.zeros(1), Sigma=_diag(1.0))
        with pytest.raises(NotConvergentError):
            ar1_to_splitting(p)


class TestStationaryCovariance:
    def test_scalar_series(self):
        C = stationary_covariance(np.array([[0.5]]), np.array([[0.75]]))
        np.testing.assert_allclose(C, [[1.0]], rtol=1e-12)

    def test_fixed_point(self, nonsymmetric_ar1):
        G = nonsymmetric_ar1.G
        C = stationary_covariance(G, np.eye(2))
        np.testing.assert_allclose(np.eye(2) + G @ C @ G.T, C, atol=1e-12)


class TestProposalTarget:
    def test_mean_and_precision(self):
        s = MatrixSplitting(M=_diag(2.0, 4.0), N=_diag(1.0, 1.0), beta=np.array([1.0, 3.0]))
        pt = proposal_target(s)
        np.testing.assert_allclose(pt.mean, [1.0, 1.0])
        np.testing.assert_allclose(pt.precision.diag, [1.0, 3.0])

    def test_requires_convergent(self):
        s = MatrixSplitting(M=_diag(1.0), N=_diag(2.0), beta=np.zeros(1))
        with pytest.raises(NotConvergentError):
            proposal_target(s)
