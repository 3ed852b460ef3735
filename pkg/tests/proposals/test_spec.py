"""Tests for proposal specifications."""

import numpy as np
import pytest
from pydantic import ValidationError

from src.proposals.spec import ProposalSpec, build_proposal, family_from_spec
from src.target import GaussianTarget
from src.theory.model import HmcFamily, MalaFamily, ThetaLangevinFamily


class TestProposalSpec:
    """Tests for proposal parameter validation."""

    def test_requires_exactly_one_step(self):
        with pytest.raises(ValidationError, match="exactly one of h and l"):
            ProposalSpec(family="mala")
        with pytest.raises(ValidationError):
            ProposalSpec(family="mala", h=0.1, l=1.0)

    def test_rejects_unknown_fields(self):
        with pytest.raises(ValidationError):
            ProposalSpec(family="mala", h=0.1, gamma=2)

    def test_leapfrog_only_for_hmc(self):
        with pytest.raises(ValidationError, match="hmc family only"):
            ProposalSpec(family="mala", h=0.1, L=2)

    def test_hmc_rejects_precision_inverse(self):
        with pytest.raises(ValidationError):
            ProposalSpec(family="hmc", h=0.1, V="precision_inverse")

    def test_mala_requires_identity(self):
        with pytest.raises(ValidationError):
            ProposalSpec(family="ula", h=0.1, V="precision_inverse")

    def test_integration_time(self):
        spec = ProposalSpec(family="hmc", h=0.3, T=1.0)
        assert spec.leapfrog_steps(0.3) == 3
        assert ProposalSpec(family="hmc", h=3.0, T=1.0).leapfrog_steps(3.0) == 1

    def test_scaled_step(self):
        """MALA with κ = 0 uses h = l²·d^{-1/3}."""
        spec = ProposalSpec(family="mala", l=1.0)
        assert spec.step_size(8) == pytest.approx(0.5)

    def test_adjusted_and_theta(self):
        assert not ProposalSpec(family="ula", h=0.1).adjusted
        assert ProposalSpec(family="mala", h=0.1, theta=0.3).effective_theta == 0.0
        assert ProposalSpec(family="theta_langevin", h=0.1, theta=0.3).effective_theta == 0.3


class TestBuildProposal:
    def test_families(self, diag_target):
        for family, extra in (("mala", {}), ("theta_langevin", {"theta": 0.5}), ("hmc", {"L": 2})):
            ar1, s = build_proposal(diag_target, ProposalSpec(family=family, h=0.3, **extra))
            assert ar1.dim == s.dim == 3

    def test_explicit_preconditioner(self):
        target = GaussianTarget.diagonal(np.array([1.0, 4.0]))
        spec = ProposalSpec.model_validate({
            "family": "theta_langevin", "h": 0.5, "theta": 0.5,
            "V": {"type": "diagonal", "eigenvalues": {"kind": "explicit", "values": [1.0, 0.25]}},
        })
        ar1, _ = build_proposal(target, spec)
        np.testing.assert_allclose(ar1.G.diag[0], ar1.G.diag[1])

    def test_family_from_spec(self):
        assert isinstance(family_from_spec(ProposalSpec(family="ula", h=0.1), 4), MalaFamily)
        fam = family_from_spec(ProposalSpec(family="theta_langevin", h=0.1, theta=0.4), 4)
        assert isinstance(fam, ThetaLangevinFamily)
        assert fam.theta == 0.4
        fam = family_from_spec(ProposalSpec(family="hmc", h=0.25, T=1.0), 4)
        assert isinstance(fam, HmcFamily)
        assert fam.L == 4
