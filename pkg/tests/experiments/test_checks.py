"""Tests for the identity check harness."""

import pytest

from src.experiments import check_names, run_checks
from src.experiments.checks import CHECK_ALIASES


class TestRunChecks:
    """Tests for the registered checks."""

    def test_all_pass(self):
        outcomes = run_checks()
        failed = [o.name for o in outcomes if not o.passed]
        assert failed == []
        assert len(outcomes) == len(check_names()) == 16

    def test_perturbation_fails_every_check(self):
        outcomes = run_checks(perturb=1e-3)
        assert not any(o.passed for o in outcomes)

    def test_only(self):
        outcomes = run_checks(only=["mala-proposal-step", "ar1-roundtrip"])
        assert [o.name for o in outcomes] == ["mala-proposal-step", "ar1-roundtrip"]

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown check"):
            run_checks(only=["no-such-check"])

    def test_report(self):
        report = run_checks(only=["mala-convergence-boundary"])[0].to_report()
        assert report["passed"] is True
        assert report["detail"] is None
        assert report["tolerance"] == 0.0

    @pytest.mark.parametrize(
        "alias, name",
        [
            ("corollary-5.6", "hmc-proposal-mean"),
            ("lemma-3.1", "quadratic-vs-density-ratio"),
            ("theorem-5.7", "hmc-mode-eigenvalues"),
        ],
    )
    def test_numbered_aliases(self, alias, name):
        outcome = run_checks(only=[alias])[0]
        assert outcome.name == name
        assert outcome.passed

    def test_every_alias_names_a_check(self):
        assert set(CHECK_ALIASES.values()) <= set(check_names())

    def test_density_ratio_tolerance(self):
        outcome = run_checks(only=["quadratic-vs-density-ratio"])[0]
        assert outcome.tolerance == 1e-10
        assert outcome.passed
