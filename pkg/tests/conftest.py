"""Shared pytest fixtures."""
import numpy as np
import pytest

from src.config import get_tolerances
from src.sampler import RandomStream
from src.target import GaussianTarget


@pytest.fixture(autouse=True)
def fresh_tolerances():
    get_tolerances.cache_clear()
    yield
    get_tolerances.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def stream() -> RandomStream:
    return RandomStream(seed=7, stream_id=0)


@pytest.fixture
def scalar_target() -> GaussianTarget:
    """A = 1, b = 0."""
    return GaussianTarget.diagonal(np.array([1.0]))


@pytest.fixture
def diag_target() -> GaussianTarget:
    """d = 3 diagonal target with nonzero mean."""
    return GaussianTarget.diagonal(np.array([0.5, 1.0, 2.0]), np.array([1.0, -0.5, 0.25]))


@pytest.fixture
def dense_target() -> GaussianTarget:
    """d = 3 dense benchmark target."""
    A = np.array([[2.0, 0.5, 0.0], [0.5, 1.5, 0.3], [0.0, 0.3, 1.0]])
    return GaussianTarget.from_precision(A, np.array([1.0, 0.0, -1.0]))


@pytest.fixture
def mala_config_data() -> dict:
    """Small MALA experiment: d = 20, identity precision, two monitored modes."""
    return {
        "target": {
            "type": "diagonal",
            "eigenvalues": {"kind": "power", "kappa": 0.0, "d": 20},
        },
        "proposal": {"family": "mala", "h": 0.5},
        "chain": {"n_steps": 2000, "n_chains": 2, "seed": 3, "directions": [0, 19]},
    }
