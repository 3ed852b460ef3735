"""Experiment tests."""
