"""Experiment config loading for CLI commands."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from src.cli.output import format_error
from src.exceptions import ConfigError
from src.experiments import ExperimentConfig, load_experiment_config

CONFIG_ERROR_EXIT = 2


def load_config_or_exit(
    console: Console, path: Path, seed: Optional[int] = None
) -> ExperimentConfig:
    """Load and validate an experiment file, exiting with code 2 on error.

    ``seed`` overrides the chain seed from the file.
    """
    try:
        config = load_experiment_config(path)
    except ConfigError as e:
        hint = None
        if e.field is not None:
            hint = f"Check the '{e.field}' entry in {path}"
        elif e.line is not None:
            hint = f"Check the syntax near line {e.line}"
        format_error(console, str(e), hint=hint)
        raise typer.Exit(code=CONFIG_ERROR_EXIT)
    if seed is not None:
        chain = config.chain.model_copy(update={"seed": seed})
        config = config.model_copy(update={"chain": chain})
    return config
