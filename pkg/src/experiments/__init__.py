"""Experiment orchestration: configuration, sweeps, verdicts and checks."""
from src.experiments.checks import CheckOutcome, check_names, run_checks
from src.experiments.config import (
    ChainSpec,
    ExperimentConfig,
    SweepSpec,
    apply_sweep,
    load_experiment_config,
    parse_experiment_config,
)
from src.experiments.runner import (
    PREDICTION_HEADER,
    SCALING_HEADER,
    chain_header,
    predict_point,
    predict_rows,
    run_sample,
    run_scaling,
    sweep_points,
)
from src.experiments.verdict import verdicts_from_csv

__all__ = [
    "ChainSpec", "SweepSpec", "ExperimentConfig", "apply_sweep",
    "load_experiment_config", "parse_experiment_config",
    "PREDICTION_HEADER", "SCALING_HEADER", "chain_header", "sweep_points",
    "predict_point", "predict_rows", "run_sample", "run_scaling",
    "verdicts_from_csv", "CheckOutcome", "check_names", "run_checks",
]
