"""Command-line front end for the splitting sampler experiments."""

__all__ = ["app"]
