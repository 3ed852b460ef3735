"""Dimension-scaling study."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from src.cli.output import format_error, format_success, format_table, json_output
from src.cli.utils import load_config_or_exit, prepare_output_dir
from src.exceptions import SplitMcmcError
from src.experiments import SCALING_HEADER, run_scaling
from src.experiments.artifacts import write_csv, write_json

console = Console()


def scaling_command(
    config_path: Path,
    out: Optional[Path],
    seed: Optional[int],
    force: bool,
    cold_start: bool,
    json_flag: bool,
) -> None:
    """Write ``scaling.csv`` and the fitted slopes in ``scaling.json``."""
    config = load_config_or_exit(console, config_path, seed)
    if config.sweep is None or config.sweep.parameter != "d":
        format_error(console, "scaling needs a sweep over d", hint="Set sweep.parameter to 'd'")
        raise typer.Exit(code=2)
    paths = prepare_output_dir(
        console, out or Path(config.outputs), ["scaling.csv", "scaling.json"], force
    )
    try:
        outcome = run_scaling(config, cold_start=cold_start)
    except SplitMcmcError as e:
        format_error(console, f"{type(e).__name__}: {e}")
        raise typer.Exit(code=1)
    write_csv(paths["scaling.csv"], SCALING_HEADER, outcome.rows)
    write_json(paths["scaling.json"], outcome.summary)

    if json_flag:
        json_output(console, outcome.summary)
        return
    format_table(console, "Dimension scaling", SCALING_HEADER, outcome.rows)
    summary = outcome.summary
    for label, slope in summary["slopes"].items():
        console.print(
            f"[cyan]{label} slope:[/cyan] {slope:.4f} "
            f"(expected {summary['expected_slope']:.4f})"
        )
    console.print(f"[cyan]Acceptance spread:[/cyan] {summary['acceptance_spread']:.4f}")
    format_success(console, f"Wrote {paths['scaling.csv']}")
