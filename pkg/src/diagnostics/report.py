"""Per-direction diagnostics summary for one chain."""
from __future__ import annotations

import logging
from typing import Any, Iterable, Optional

from src.diagnostics.estimators import esjd, iact, lag1_correlation
from src.exceptions import DegenerateTraceError, TraceTooShortError, UnknownDirectionError
from src.sampler import ChainResult

logger = logging.getLogger(__name__)

SUMMARY_HEADER = ("direction", "esjd", "se", "lag1", "iact")


def _direction_iact(result: ChainResult, label: str) -> Optional[float]:
    try:
        series = result.projection(label)
    except UnknownDirectionError:
        return None
    try:
        return iact(series, label).reported
    except (TraceTooShortError, DegenerateTraceError) as e:
        logger.debug("No IACT for %s: %s", label, e)
        return None


def diagnostics_report(
    result: ChainResult, labels: Optional[Iterable[str]] = None
) -> dict[str, Any]:
    """JSON-ready summary of acceptance and per-direction estimates.

    ``labels`` defaults to every registered direction. IACT is ``None`` when
    no projection trace was stored or the trace is too short.
    """
    rows = []
    for label in labels if labels is not None else list(result.directions):
        jump = esjd(result, label)
        try:
            lag1: Optional[float] = lag1_correlation(result, label)
        except TraceTooShortError:
            lag1 = None
        rows.append(
            {
                "direction": label,
                "esjd": jump.esjd,
                "se": jump.se,
                "lag1": lag1,
                "iact": _direction_iact(result, label),
            }
        )
    return {
        "seed": result.seed,
        "stream_id": result.stream_id,
        "n_recorded": result.n_recorded,
        "acceptance_rate": result.acceptance_rate,
        "mean_accept_prob": result.mean_accept_prob,
        "directions": rows,
    }


def summary_rows(report: dict[str, Any]) -> list[tuple]:
    """``direction,esjd,se,lag1,iact`` rows of a :func:`diagnostics_report`."""
    return [tuple(row[k] for k in SUMMARY_HEADER) for row in report["directions"]]
