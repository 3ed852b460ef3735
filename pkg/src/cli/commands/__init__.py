"""CLI commands."""

from . import predict, sample, scaling, validate

__all__ = [
    "predict",
    "sample",
    "scaling",
    "validate",
]
