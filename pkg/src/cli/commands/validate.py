"""Run the identity check suite."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from src.cli.output import format_error, format_success, format_table, json_output
from src.cli.utils import prepare_output_dir
from src.experiments import run_checks
from src.experiments.artifacts import write_json

console = Console()


def validate_command(
    only: Optional[list[str]],
    perturb: float,
    out: Optional[Path],
    force: bool,
    json_flag: bool,
) -> None:
    """Run the checks and exit 0 iff every one passes.

    ``perturb`` shifts every computed value, so a nonzero value above the
    tolerances must make the suite fail.
    """
    paths = prepare_output_dir(console, out, ["validate.json"], force) if out else None
    try:
        outcomes = run_checks(only=only, perturb=perturb)
    except ValueError as e:
        format_error(console, str(e))
        raise typer.Exit(code=2)

    passed = all(o.passed for o in outcomes)
    report = {
        "passed": passed,
        "perturb": perturb,
        "checks": [o.to_report() for o in outcomes],
    }
    if paths:
        write_json(paths["validate.json"], report)

    if json_flag:
        json_output(console, report)
    else:
        format_table(
            console,
            "Identity checks",
            ["Check", "Error", "Tolerance", "Passed"],
            [(o.name, o.error, o.tolerance, o.passed) for o in outcomes],
        )
        failed = [o.name for o in outcomes if not o.passed]
        if failed:
            format_error(
                console,
                f"{len(failed)} of {len(outcomes)} checks failed: {', '.join(failed)}",
            )
        else:
            format_success(console, f"All {len(outcomes)} checks passed")
    if not passed:
        raise typer.Exit(code=1)
