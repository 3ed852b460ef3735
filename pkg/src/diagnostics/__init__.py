"""Empirical estimators checked against the closed-form predictions."""
from src.diagnostics.estimators import (
    EsjdEstimate,
    IactEstimate,
    Lag1Estimate,
    MomentCheckReport,
    autocovariance,
    esjd,
    iact,
    lag1_correlation,
    lag1_estimates,
    target_moment_check,
)
from src.diagnostics.report import SUMMARY_HEADER, diagnostics_report, summary_rows

__all__ = [
    "EsjdEstimate", "IactEstimate", "Lag1Estimate", "MomentCheckReport",
    "autocovariance", "esjd", "iact", "lag1_correlation", "lag1_estimates",
    "target_moment_check", "diagnostics_report", "summary_rows", "SUMMARY_HEADER",
]
