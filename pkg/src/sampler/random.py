"""Reproducible, independent random streams."""
from __future__ import annotations

import numpy as np


class RandomStream:
    """Counter-based (Philox) generator keyed by ``(seed, stream_id)``.

    Distinct stream ids give independent streams of the same seed; the same
    pair always reproduces the same output.
    """

    def __init__(self, seed: int, stream_id: int = 0) -> None:
        if seed < 0 or stream_id < 0:
            raise ValueError("seed and stream id must be non-negative")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        self._generator = np.random.Generator(np.random.Philox(sequence))

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, stream_id={self.stream_id})"

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def standard_normal(self, size=None) -> np.ndarray:
        return self._generator.standard_normal(size)

    def uniform(self, size=None):
        return self._generator.random(size)

    def log_uniform(self) -> float:
        """``log u`` for ``u`` uniform on (0, 1]."""
        return float(np.log1p(-self._generator.random()))

    def substream(self, offset: int) -> RandomStream:
        """Stream with id ``stream_id + offset`` under the same seed."""
        return RandomStream(self.seed, self.stream_id + offset)
