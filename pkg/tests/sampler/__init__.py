"""Sampler tests."""
