"""Byte-stable CSV and JSON artifacts."""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np


def format_cell(value: Any) -> str:
    """``repr`` for floats, empty for missing or NaN, ``str`` otherwise."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, np.integer):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return "" if math.isnan(value) else repr(value)
    return str(value)


def parse_cell(text: str) -> Optional[float]:
    return float(text) if text != "" else None


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])


def read_csv(path: Path) -> list[dict[str, str]]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def _json_default(obj: Any) -> Any:
    if hasattr(obj, "tolist"):
        return obj.tolist()
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def null_non_finite(obj: Any) -> Any:
    """Replace NaN and infinities with None, recursing into dicts and sequences."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: null_non_finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [null_non_finite(v) for v in obj]
    return obj


def write_json(path: Path, data: Any) -> None:
    """Sorted, indented JSON; non-finite floats become null."""
    with open(path, "w") as f:
        json.dump(null_non_finite(data), f, indent=2, sort_keys=True, default=_json_default)
        f.write("\n")


def check_writable(paths: Sequence[Path], force: bool) -> list[Path]:
    """Return the paths that already exist; empty when ``force`` is set."""
    if force:
        return []
    return [p for p in paths if p.exists()]
