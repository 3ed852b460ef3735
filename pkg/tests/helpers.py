"""Helpers shared by test modules."""
import json
from pathlib import Path

import numpy as np


def random_spd(rng: np.random.Generator, d: int, low: float = 0.5, high: float = 3.0) -> np.ndarray:
    """Random symmetric positive definite matrix with spectrum in [low, high]."""
    Q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    return (Q * rng.uniform(low, high, d)) @ Q.T


def write_config(path: Path, data: dict) -> Path:
    path.write_text(json.dumps(data))
    return path
