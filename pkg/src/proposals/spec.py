"""JSON proposal specifications."""
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.linalg import SymmetricOperator
from src.proposals.hmc import HmcConfig, hmc_proposal
from src.proposals.langevin import LangevinConfig, mala, theta_langevin
from src.proposals.preconditioning import precision_inverse
from src.splitting import Ar1Proposal, MatrixSplitting
from src.target import GaussianTarget, TargetSpec, build_target
from src.theory.limits import ScalingLaw
from src.theory.model import Family, HmcFamily, MalaFamily, ThetaLangevinFamily

FamilyName = Literal["mala", "ula", "theta_langevin", "hmc"]


class ProposalSpec(BaseModel):
    """Proposal family and its parameters.

    The step is given either directly (``h``) or through the dimension
    scaling law (``l``). HMC takes either ``L`` leapfrog steps or an
    integration time ``T`` from which ``L = max(1, round(T/h))``.
    """

    model_config = ConfigDict(extra="forbid")

    family: FamilyName
    h: Optional[Annotated[float, Field(gt=0.0)]] = None
    l: Optional[Annotated[float, Field(gt=0.0)]] = None
    theta: Annotated[float, Field(ge=0.0, le=1.0)] = 0.0
    L: Optional[Annotated[int, Field(ge=1)]] = None
    T: Optional[Annotated[float, Field(gt=0.0)]] = None
    V: Union[Literal["identity", "precision_inverse"], TargetSpec] = "identity"

    @model_validator(mode="after")
    def validate_parameters(self) -> "ProposalSpec":
        if (self.h is None) == (self.l is None):
            raise ValueError("exactly one of h and l must be given")
        if self.L is not None and self.T is not None:
            raise ValueError("give at most one of L and T")
        if self.family != "hmc" and (self.L is not None or self.T is not None):
            raise ValueError("L and T apply to the hmc family only")
        if self.family == "hmc" and self.V == "precision_inverse":
            raise ValueError("the precision_inverse preconditioner is not supported for hmc")
        if self.family in ("mala", "ula") and self.V != "identity":
            raise ValueError(f"{self.family} uses the identity preconditioner")
        return self

    @property
    def adjusted(self) -> bool:
        return self.family != "ula"

    @property
    def effective_theta(self) -> float:
        return self.theta if self.family == "theta_langevin" else 0.0

    def step_size(self, d: int, kappa: float = 0.0) -> float:
        if self.h is not None:
            return self.h
        return ScalingLaw(family=self.family, l=self.l, kappa=kappa).step(d)

    def leapfrog_steps(self, h: float) -> int:
        if self.T is not None:
            return max(1, round(self.T / h))
        return self.L or 1


def preconditioner_from_spec(
    target: GaussianTarget, spec: ProposalSpec
) -> Optional[SymmetricOperator]:
    if spec.V == "identity":
        return None
    if spec.V == "precision_inverse":
        return precision_inverse(target)
    return build_target(spec.V).precision


def build_proposal(
    target: GaussianTarget, spec: ProposalSpec, kappa: float = 0.0
) -> tuple[Ar1Proposal, MatrixSplitting]:
    """Construct the (AR(1), splitting) pair described by *spec* for *target*."""
    h = spec.step_size(target.dim, kappa)
    V = preconditioner_from_spec(target, spec)
    if spec.family in ("mala", "ula"):
        return mala(target, h)
    if spec.family == "theta_langevin":
        return theta_langevin(target, LangevinConfig(h=h, theta=spec.theta, V=V))
    return hmc_proposal(target, HmcConfig(h=h, L=spec.leapfrog_steps(h), V=V))


def family_from_spec(spec: ProposalSpec, d: int, kappa: float = 0.0) -> Family:
    """Per-mode family description used by the spectral model."""
    h = spec.step_size(d, kappa)
    if spec.family in ("mala", "ula"):
        return MalaFamily(h=h)
    if spec.family == "theta_langevin":
        return ThetaLangevinFamily(h=h, theta=spec.theta)
    return HmcFamily(h=h, L=spec.leapfrog_steps(h))
