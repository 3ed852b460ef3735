"""Metropolis-Hastings with matrix-splitting proposals for Gaussian targets."""
