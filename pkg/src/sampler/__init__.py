"""Metropolis-Hastings sampling over AR(1) proposals."""
from src.sampler.acceptance import log_accept_ratio_generic, log_accept_ratio_quadratic
from src.sampler.chain import (
    ChainConfig,
    ChainResult,
    ChainTrace,
    Direction,
    DirectionStats,
    PooledResult,
    StartKind,
    merge_results,
    run_chain,
    run_chains_async,
    run_parallel_chains,
)
from src.sampler.random import RandomStream

__all__ = [
    "RandomStream", "log_accept_ratio_quadratic", "log_accept_ratio_generic",
    "ChainConfig", "ChainResult", "ChainTrace", "Direction", "DirectionStats",
    "StartKind", "PooledResult", "run_chain", "run_chains_async",
    "run_parallel_chains", "merge_results",
]
