"""Tests for symmetric operators."""

import numpy as np
import pytest

from src.config import get_tolerances
from src.exceptions import DenseCapError, DimensionMismatchError
from src.linalg import (
    SymmetricOperator,
    as_operator,
    dim_of,
    is_diagonal,
    matvec,
    to_dense,
)


class TestConstruction:
    """Tests for operator constructors."""

    def test_from_dense_symmetrizes_roundoff(self):
        """Asymmetry at roundoff level is averaged away."""
        X = np.array([[2.0, 1.0], [1.0 + 1e-14, 3.0]])
        op = SymmetricOperator.from_dense(X)
        np.testing.assert_array_equal(op.dense, op.dense.T)

    def test_from_dense_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="not symmetric"):
            SymmetricOperator.from_dense(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_from_dense_rejects_non_square(self):
        with pytest.raises(DimensionMismatchError):
            SymmetricOperator.from_dense(np.ones((2, 3)))

    def test_from_dense_rejects_non_finite(self):
        with pytest.raises(ValueError):
            SymmetricOperator.from_dense(np.array([[np.nan]]))

    def test_from_diagonal_rejects_non_finite(self):
        with pytest.raises(ValueError):
            SymmetricOperator.from_diagonal(np.array([1.0, np.inf]))

    def test_exactly_one_form(self):
        with pytest.raises(ValueError):
            SymmetricOperator()

    def test_dense_cap(self, monkeypatch):
        """Dense construction is refused above the cap."""
        monkeypatch.setenv("SPLITMCMC_DENSE_CAP", "2")
        get_tolerances.cache_clear()
        with pytest.raises(DenseCapError):
            SymmetricOperator.from_dense(np.eye(3))
        with pytest.raises(DenseCapError):
            SymmetricOperator.identity(3).to_dense()

    def test_identity(self):
        op = SymmetricOperator.identity(4)
        assert op.is_diagonal
        assert op.is_identity()
        assert op.dim == 4


class TestOperations:
    """Tests for products and helpers."""

    def test_matvec_dense_and_diagonal_agree(self):
        v = np.array([1.0, 2.0, 3.0])
        diag = SymmetricOperator.from_diagonal(v)
        dense = SymmetricOperator.from_dense(np.diag(v))
        x = np.array([1.0, -1.0, 0.5])
        np.testing.assert_allclose(diag.matvec(x), dense.matvec(x))

    def test_matvec_on_columns(self):
        op = SymmetricOperator.from_diagonal(np.array([2.0, 3.0]))
        X = np.ones((2, 4))
        np.testing.assert_allclose(op.matvec(X), [[2.0] * 4, [3.0] * 4])

    def test_matvec_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            SymmetricOperator.identity(2).matvec(np.ones(3))

    def test_quadratic_trace_max_abs(self):
        op = SymmetricOperator.from_dense(np.array([[2.0, -1.0], [-1.0, 3.0]]))
        assert op.quadratic(np.array([1.0, 1.0])) == pytest.approx(3.0)
        assert op.trace() == pytest.approx(5.0)
        assert op.max_abs() == 3.0

    def test_scaled(self):
        op = SymmetricOperator.from_diagonal(np.array([1.0, 2.0])).scaled(0.5)
        np.testing.assert_allclose(op.diag, [0.5, 1.0])

    def test_module_helpers_accept_arrays(self):
        G = np.array([[0.0, 1.0], [0.5, 0.0]])
        assert dim_of(G) == 2
        assert not is_diagonal(G)
        np.testing.assert_allclose(matvec(G, np.array([1.0, 2.0])), [2.0, 0.5])
        np.testing.assert_array_equal(to_dense(G), G)
        assert is_diagonal(SymmetricOperator.identity(2))

    def test_as_operator_passes_through(self):
        op = SymmetricOperator.identity(2)
        assert as_operator(op) is op
        assert not as_operator(np.eye(2)).is_diagonal
