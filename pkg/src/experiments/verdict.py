"""Pass/fail verdicts recomputed from the prediction and chain CSV files."""
from __future__ import annotations

import math
from collections import defaultdict
from pathlib import Path
from typing import Any, Optional

from src.experiments.artifacts import parse_cell, read_csv

# Finite-d Gaussian approximation error allowed on top of Monte-Carlo error.
ACCEPT_MODEL_TOL = 0.02


def _pooled(values: list[tuple[float, float, int]]) -> tuple[float, float]:
    """Step-weighted mean of ``(value, se, n)`` triples and its standard error."""
    n = sum(k for _, _, k in values)
    mean = math.fsum(v * k for v, _, k in values) / n
    se = math.sqrt(math.fsum((s * k) ** 2 for _, s, k in values)) / n
    return mean, se


def _acceptance_se(rates: list[float], counts: list[int]) -> float:
    n = sum(counts)
    if len(rates) > 1:
        mean = math.fsum(rates) / len(rates)
        var = math.fsum((r - mean) ** 2 for r in rates) / (len(rates) - 1)
        return math.sqrt(var / len(rates))
    a = rates[0]
    return math.sqrt(max(a * (1.0 - a), 0.0) / max(n, 1))


def _check(param: Optional[float], quantity: str, empirical: float, predicted: float,
           tolerance: float) -> dict[str, Any]:
    return {
        "param": param,
        "quantity": quantity,
        "empirical": empirical,
        "predicted": predicted,
        "tolerance": tolerance,
        "passed": abs(empirical - predicted) <= tolerance,
    }


def verdicts_from_csv(
    predictions: Path, chains: Path, model_tol: float = ACCEPT_MODEL_TOL
) -> dict[str, Any]:
    """Compare pooled chain statistics with the predictions per sweep value.

    Acceptance passes within ``3·SE + model_tol``; a mode's ESJD passes
    within ``|U₃| + 3·SE`` of ``U₁U₂``. Rows without a prediction (e.g. the
    unadjusted chain) produce no check.
    """
    pred_rows = read_csv(predictions)
    chain_rows = read_csv(chains)

    by_param: dict[str, list[dict[str, str]]] = defaultdict(list)
    for row in chain_rows:
        by_param[row["param"]].append(row)

    checks = []
    seen_accept = set()
    for row in pred_rows:
        key = row["param"]
        runs = by_param.get(key, [])
        if not runs:
            continue
        param = parse_cell(key)
        counts = [int(r["n"]) for r in runs]
        if sum(counts) == 0:
            continue
        accept_pred = parse_cell(row["accept_pred"])
        if accept_pred is not None and key not in seen_accept:
            seen_accept.add(key)
            rates = [float(r["accept_rate"]) for r in runs]
            empirical = math.fsum(a * n for a, n in zip(rates, counts)) / sum(counts)
            se = _acceptance_se(rates, counts)
            checks.append(
                _check(param, "acceptance", empirical, accept_pred, 3.0 * se + model_tol)
            )
        esjd_pred = parse_cell(row["esjd_pred"])
        if esjd_pred is None or row["mode"] == "":
            continue
        mode = row["mode"]
        triples = [
            (float(r[f"esjd_{mode}"]), float(r[f"esjd_se_{mode}"]), int(r["n"]))
            for r in runs
            if r[f"esjd_{mode}"] != ""
        ]
        if not triples:
            continue
        empirical, se = _pooled(triples)
        bound = parse_cell(row["esjd_bound"]) or 0.0
        checks.append(
            _check(param, f"esjd_mode{mode}", empirical, esjd_pred, abs(bound) + 3.0 * se)
        )
    return {"passed": all(c["passed"] for c in checks), "checks": checks}
