"""Test suite for splitmcmc."""
