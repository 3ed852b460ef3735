"""Monte-Carlo chains compared with the predictions."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from src.cli.output import (
    format_error,
    format_success,
    format_table,
    format_warning,
    json_output,
)
from src.cli.utils import load_config_or_exit, prepare_output_dir
from src.exceptions import SplitMcmcError
from src.experiments import PREDICTION_HEADER, chain_header, run_sample, verdicts_from_csv
from src.experiments.artifacts import write_csv, write_json

console = Console()

OUTPUTS = ["predictions.csv", "chains.csv", "verdict.json"]


def sample_command(
    config_path: Path,
    out: Optional[Path],
    seed: Optional[int],
    force: bool,
    cold_start: bool,
    json_flag: bool,
) -> None:
    """Run the chains, write CSVs and a verdict recomputed from them.

    Exits 1 when any empirical quantity misses its prediction.
    """
    config = load_config_or_exit(console, config_path, seed)
    paths = prepare_output_dir(console, out or Path(config.outputs), OUTPUTS, force)
    if cold_start:
        format_warning(console, "Cold start: burn-in bias enters every comparison")
    try:
        outcome = run_sample(config, cold_start=cold_start)
    except SplitMcmcError as e:
        format_error(console, f"{type(e).__name__}: {e}")
        raise typer.Exit(code=1)

    write_csv(paths["predictions.csv"], PREDICTION_HEADER, outcome.prediction_rows)
    write_csv(paths["chains.csv"], chain_header(outcome.modes), outcome.chain_rows)
    verdict = verdicts_from_csv(paths["predictions.csv"], paths["chains.csv"])
    write_json(paths["verdict.json"], verdict)

    if json_flag:
        json_output(console, verdict)
    else:
        format_table(
            console,
            "Theory vs Monte Carlo",
            ["Param", "Quantity", "Empirical", "Predicted", "Tolerance", "Passed"],
            [
                (c["param"], c["quantity"], c["empirical"], c["predicted"],
                 c["tolerance"], c["passed"])
                for c in verdict["checks"]
            ],
        )
        if verdict["passed"]:
            out_dir = paths["chains.csv"].parent
            format_success(console, f"All comparisons passed; outputs in {out_dir}")
        else:
            format_error(console, "Some empirical values miss their predictions")
    if not verdict["passed"]:
        raise typer.Exit(code=1)
