"""Proposal family tests."""
