"""Main CLI entry point for splitmcmc."""

import logging
from pathlib import Path
from typing import Optional

import typer
from rich.console import Console

from src.cli.commands.predict import predict_command
from src.cli.commands.sample import sample_command
from src.cli.commands.scaling import scaling_command
from src.cli.commands.validate import validate_command

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"

app = typer.Typer(
    name="splitmcmc",
    help="Matrix-splitting Metropolis-Hastings: theory vs Monte Carlo experiments",
    no_args_is_help=True,
    add_completion=False,
)
console = Console()


@app.callback()
def configure(
    verbose: bool = typer.Option(False, "-v", "--verbose", help="Debug logging"),
) -> None:
    """Configure logging for every command."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
        force=True,
    )


@app.command("validate")
def validate(
    only: Optional[list[str]] = typer.Option(
        None, "--only", help="Run only the named check (repeatable)"
    ),
    perturb: float = typer.Option(
        0.0, "--perturb", help="Offset added to every computed value"
    ),
    out: Optional[Path] = typer.Option(None, "-o", "--out", help="Write validate.json here"),
    force: bool = typer.Option(False, "-f", "--force", help="Overwrite outputs"),
    json_flag: bool = typer.Option(False, "--json", help="Output as JSON"),
) -> None:
    """Run the cross-module identity checks."""
    validate_command(only, perturb, out, force, json_flag)


@app.command("predict")
def predict(
    config: Path = typer.Option(..., "-c", "--config", help="Experiment file"),
    out: Optional[Path] = typer.Option(None, "-o", "--out", help="Output directory"),
    force: bool = typer.Option(False, "-f", "--force", help="Overwrite outputs"),
    json_flag: bool = typer.Option(False, "--json", help="Output as JSON"),
) -> None:
    """Closed-form acceptance and ESJD predictions."""
    predict_command(config, out, force, json_flag)


@app.command("sample")
def sample(
    config: Path = typer.Option(..., "-c", "--config", help="Experiment file"),
    out: Optional[Path] = typer.Option(None, "-o", "--out", help="Output directory"),
    seed: Optional[int] = typer.Option(None, "-s", "--seed", min=0, help="Override chain seed"),
    force: bool = typer.Option(False, "-f", "--force", help="Overwrite outputs"),
    cold_start: bool = typer.Option(
        False, "--cold-start", help="Start chains at zero instead of equilibrium"
    ),
    json_flag: bool = typer.Option(False, "--json", help="Output as JSON"),
) -> None:
    """Run chains and compare them with the predictions."""
    sample_command(config, out, seed, force, cold_start, json_flag)


@app.command("scaling")
def scaling(
    config: Path = typer.Option(..., "-c", "--config", help="Experiment file with a d sweep"),
    out: Optional[Path] = typer.Option(None, "-o", "--out", help="Output directory"),
    seed: Optional[int] = typer.Option(None, "-s", "--seed", min=0, help="Override chain seed"),
    force: bool = typer.Option(False, "-f", "--force", help="Overwrite outputs"),
    cold_start: bool = typer.Option(
        False, "--cold-start", help="Start chains at zero instead of equilibrium"
    ),
    json_flag: bool = typer.Option(False, "--json", help="Output as JSON"),
) -> None:
    """Acceptance and ESJD across dimensions with a log-log slope fit."""
    scaling_command(config, out, seed, force, cold_start, json_flag)


def main() -> None:
    """Entry point."""
    try:
        app()
    except KeyboardInterrupt:
        console.print("\n[yellow]Cancelled[/yellow]")
        raise typer.Exit(130)
