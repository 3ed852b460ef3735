"""Closed-form acceptance and jump predictions for a sweep."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from src.cli.output import format_error, format_success, format_table, json_output
from src.cli.utils import load_config_or_exit, prepare_output_dir
from src.exceptions import SplitMcmcError
from src.experiments import PREDICTION_HEADER, predict_rows
from src.experiments.artifacts import write_csv

console = Console()


def predict_command(
    config_path: Path,
    out: Optional[Path],
    force: bool,
    json_flag: bool,
) -> None:
    """Write ``predictions.csv`` for every sweep value and monitored mode."""
    config = load_config_or_exit(console, config_path)
    paths = prepare_output_dir(console, out or Path(config.outputs), ["predictions.csv"], force)
    try:
        rows = predict_rows(config)
    except SplitMcmcError as e:
        format_error(console, f"{type(e).__name__}: {e}")
        raise typer.Exit(code=1)
    write_csv(paths["predictions.csv"], PREDICTION_HEADER, rows)

    if json_flag:
        json_output(console, {
            "predictions": [dict(zip(PREDICTION_HEADER, row)) for row in rows],
            "path": str(paths["predictions.csv"]),
        })
        return
    format_table(console, "Predictions", PREDICTION_HEADER, rows)
    format_success(console, f"Wrote {paths['predictions.csv']}")
