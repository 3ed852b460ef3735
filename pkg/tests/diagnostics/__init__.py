"""Diagnostics tests."""
