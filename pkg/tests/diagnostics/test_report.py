"""Tests for the per-direction diagnostics summary."""

import numpy as np

from src.diagnostics import SUMMARY_HEADER, diagnostics_report, summary_rows
from src.proposals import mala
from src.sampler import ChainConfig, Direction, RandomStream, run_chain


def _run(target, store_projections: bool, n_steps: int = 500):
    cfg = ChainConfig(
        n_steps=n_steps,
        directions=(Direction("a", np.array([1.0, 0.0, 0.0])), Direction("b", np.ones(3))),
        store_projections=store_projections,
    )
    return run_chain(target, mala(target, 0.6), cfg, RandomStream(2, 4))


class TestDiagnosticsReport:
    def test_rows(self, diag_target):
        report = diagnostics_report(_run(diag_target, True))
        assert report["seed"] == 2
        assert report["stream_id"] == 4
        assert report["n_recorded"] == 500
        assert [r["direction"] for r in report["directions"]] == ["a", "b"]
        row = report["directions"][0]
        assert row["esjd"] > 0
        assert row["iact"] >= 1.0
        assert -1.0 <= row["lag1"] <= 1.0

    def test_iact_missing_without_projections(self, diag_target):
        report = diagnostics_report(_run(diag_target, False))
        assert all(r["iact"] is None for r in report["directions"])

    def test_short_chain(self, diag_target):
        report = diagnostics_report(_run(diag_target, True, n_steps=1), ["a"])
        assert report["directions"][0]["lag1"] is None
        assert report["directions"][0]["iact"] is None

    def test_summary_rows(self, diag_target):
        rows = summary_rows(diagnostics_report(_run(diag_target, True), ["b"]))
        assert len(rows) == 1
        assert len(rows[0]) == len(SUMMARY_HEADER)
        assert rows[0][0] == "b"
