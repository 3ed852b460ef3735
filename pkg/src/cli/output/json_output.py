"""JSON output mode utilities."""

import json
from pathlib import Path
from typing import Any

from rich.console import Console

from src.experiments.artifacts import null_non_finite


class CLIJSONEncoder(json.JSONEncoder):
    """JSON encoder that handles numpy values and paths."""

    def default(self, obj: Any) -> Any:
        if isinstance(obj, Path):
            return str(obj)
        if hasattr(obj, "tolist"):
            return obj.tolist()
        if hasattr(obj, "to_report"):
            return obj.to_report()
        return super().default(obj)


def json_output(console: Console, data: Any) -> None:
    """Output data as formatted JSON."""
    console.print_json(json.dumps(null_non_finite(data), cls=CLIJSONEncoder))
