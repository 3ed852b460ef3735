"""Tests for factorizations, spectral decompositions and solves."""

import numpy as np
import pytest

from src.config import get_tolerances
from src.exceptions import (
    DimensionMismatchError,
    NotPositiveDefiniteError,
    SingularError,
)
from src.linalg import (
    SymmetricOperator,
    operator_power,
    solve,
    spd_factorize,
    spectral_decompose,
    spectral_radius,
)
from tests.helpers import random_spd


class TestSpdFactorize:
    """Tests for Cholesky factorization."""

    def test_reconstructs_dense(self, rng):
        A = random_spd(rng, 5)
        f = spd_factorize(SymmetricOperator.from_dense(A))
        np.testing.assert_allclose(f.reconstruct(), A, atol=1e-10)

    def test_factor_solves(self, rng):
        A = random_spd(rng, 4)
        f = spd_factorize(SymmetricOperator.from_dense(A))
        x = rng.standard_normal(4)
        np.testing.assert_allclose(f.solve_factor(f.apply_factor(x)), x, atol=1e-12)
        L = f.factor
        np.testing.assert_allclose(L.T @ f.solve_factor_transpose(x), x, atol=1e-12)
        np.testing.assert_allclose(A @ f.solve(x), x, atol=1e-10)

    def test_logdet(self, rng):
        A = random_spd(rng, 4)
        f = spd_factorize(SymmetricOperator.from_dense(A))
        assert f.logdet() == pytest.approx(np.linalg.slogdet(A)[1])

    def test_diagonal(self):
        f = spd_factorize(SymmetricOperator.from_diagonal(np.array([4.0, 9.0])))
        np.testing.assert_allclose(f.factor, [2.0, 3.0])
        assert f.logdet() == pytest.approx(np.log(36.0))

    def test_rejects_indefinite_diagonal(self):
        with pytest.raises(NotPositiveDefiniteError) as exc:
            spd_factorize(SymmetricOperator.from_diagonal(np.array([1.0, -1.0])))
        assert exc.value.pivot == 1

    def test_rejects_indefinite_dense(self):
        with pytest.raises(NotPositiveDefiniteError):
            spd_factorize(SymmetricOperator.from_dense(np.array([[1.0, 2.0], [2.0, 1.0]])))


class TestSpectralDecompose:
    """Tests for the symmetric eigendecomposition."""

    def test_dense_ascending_and_reconstructs(self, rng):
        A = random_spd(rng, 5)
        spec = spectral_decompose(SymmetricOperator.from_dense(A))
        assert np.all(np.diff(spec.eigenvalues) >= 0)
        np.testing.assert_allclose(spec.reconstruct(), A, atol=1e-9)

    def test_diagonal_keeps_permutation(self):
        spec = spectral_decompose(SymmetricOperator.from_diagonal(np.array([3.0, 1.0, 2.0])))
        np.testing.assert_allclose(spec.eigenvalues, [1.0, 2.0, 3.0])
        np.testing.assert_allclose(spec.vector(0), [0.0, 1.0, 0.0])
        np.testing.assert_allclose(spec.reconstruct(), np.diag([3.0, 1.0, 2.0]))


class TestOperatorPower:
    def test_square_root(self, rng):
        A = random_spd(rng, 4)
        root = operator_power(SymmetricOperator.from_dense(A), 0.5).to_dense()
        np.testing.assert_allclose(root @ root, A, atol=1e-10)

    def test_inverse_root_diagonal(self):
        op = operator_power(SymmetricOperator.from_diagonal(np.array([4.0, 0.25])), -0.5)
        np.testing.assert_allclose(op.diag, [0.5, 2.0])

    def test_rejects_non_spd(self):
        with pytest.raises(NotPositiveDefiniteError):
            operator_power(SymmetricOperator.from_diagonal(np.array([1.0, 0.0])), 0.5)


class TestSolve:
    def test_general_matrix(self, rng):
        G = rng.standard_normal((4, 4)) + 4 * np.eye(4)
        rhs = rng.standard_normal(4)
        np.testing.assert_allclose(G @ solve(G, rhs), rhs, atol=1e-12)

    def test_singular_raises(self):
        with pytest.raises(SingularError):
            solve(np.array([[1.0, 1.0], [1.0, 1.0]]), np.array([1.0, 2.0]))

    def test_zero_diagonal_raises(self):
        with pytest.raises(SingularError):
            solve(SymmetricOperator.from_diagonal(np.array([1.0, 0.0])), np.ones(2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            solve(SymmetricOperator.identity(2), np.ones(3))


class TestSpectralRadius:
    def test_rotation_has_unit_radius(self):
        """Complex eigenvalues are handled by the general eigensolver."""
        R = np.array([[0.0, -0.5], [0.5, 0.0]])
        assert spectral_radius(R) == pytest.approx(0.5)

    def test_diagonal_operator(self):
        op = SymmetricOperator.from_diagonal(np.array([0.2, -0.9]))
        assert spectral_radius(op) == pytest.approx(0.9)

    def test_power_iteration_above_dense_cap(self, monkeypatch):
        """Above the dense cap the radius is estimated by power iteration."""
        monkeypatch.setenv("SPLITMCMC_DENSE_CAP", "2")
        get_tolerances.cache_clear()
        G = np.diag([0.3, -0.8, 0.5])
        assert spectral_radius(G) == pytest.approx(0.8, rel=1e-8)
