"""Output directory validation for CLI commands."""

from pathlib import Path
from typing import Sequence

import typer
from rich.console import Console

from src.cli.output import format_error
from src.experiments.artifacts import check_writable


def prepare_output_dir(
    console: Console, out: Path, names: Sequence[str], force: bool
) -> dict[str, Path]:
    """Create ``out`` and return the artifact paths.

    Exits with code 2 when an artifact exists and ``force`` is not set.
    """
    if out.exists() and not out.is_dir():
        format_error(console, f"Output path {out} is not a directory")
        raise typer.Exit(code=2)
    paths = {name: out / name for name in names}
    existing = check_writable(list(paths.values()), force)
    if existing:
        format_error(
            console,
            f"Refusing to overwrite {', '.join(str(p) for p in existing)}",
            hint="Use --force to overwrite existing outputs",
        )
        raise typer.Exit(code=2)
    out.mkdir(parents=True, exist_ok=True)
    return paths
