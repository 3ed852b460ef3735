"""Splitting tests."""
