"""Experiment configuration files."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.exceptions import ConfigError
from src.proposals.spec import ProposalSpec
from src.target import DiagonalTargetSpec, PowerEigenvalues, TargetSpec

SweepParameter = Literal["h", "l", "d", "theta", "L"]


class ChainSpec(BaseModel):
    """Run length, chain count and the eigen-directions to monitor."""

    model_config = ConfigDict(extra="forbid")

    n_steps: Annotated[int, Field(ge=0)] = 10_000
    burn_in: Annotated[int, Field(ge=0)] = 0
    n_chains: Annotated[int, Field(ge=1)] = 1
    seed: Annotated[int, Field(ge=0)] = 0
    directions: list[Annotated[int, Field(ge=0)]] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_burn_in(self) -> "ChainSpec":
        if self.burn_in > self.n_steps:
            raise ValueError("burn_in cannot exceed n_steps")
        return self


class SweepSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    parameter: SweepParameter
    values: Annotated[list[float], Field(min_length=1)]

    @model_validator(mode="after")
    def validate_values(self) -> "SweepSpec":
        if self.parameter in ("d", "L") and any(v != int(v) or v < 1 for v in self.values):
            raise ValueError(f"{self.parameter} values must be positive integers")
        if self.parameter == "d" and self.values != sorted(self.values):
            raise ValueError("d values must be ascending")
        return self


class ExperimentConfig(BaseModel):
    """One experiment: target, proposal, chain settings and an optional sweep."""

    model_config = ConfigDict(extra="forbid")

    target: TargetSpec
    proposal: ProposalSpec
    chain: ChainSpec = Field(default_factory=ChainSpec)
    sweep: Optional[SweepSpec] = None
    outputs: str = "results"

    @property
    def kappa(self) -> float:
        """Eigenvalue growth exponent of a power-law target, else 0."""
        if isinstance(self.target, DiagonalTargetSpec) and isinstance(
            self.target.eigenvalues, PowerEigenvalues
        ):
            return self.target.eigenvalues.kappa
        return 0.0

    @model_validator(mode="after")
    def validate_sweep(self) -> "ExperimentConfig":
        dims = [self.target.dim]
        if self.sweep is not None and self.sweep.parameter == "d":
            if not (
                isinstance(self.target, DiagonalTargetSpec)
                and isinstance(self.target.eigenvalues, PowerEigenvalues)
            ):
                raise ValueError("a d sweep needs a diagonal power-law target")
            if self.target.b != "zero":
                raise ValueError("a d sweep needs b = 'zero'")
            dims = [int(v) for v in self.sweep.values]
        bad = [i for i in self.chain.directions if i >= min(dims)]
        if bad:
            raise ValueError(f"mode indices {bad} out of range for d = {min(dims)}")
        if self.sweep is not None and self.sweep.parameter == "theta":
            if self.proposal.family != "theta_langevin":
                raise ValueError("a theta sweep needs the theta_langevin family")
        if self.sweep is not None and self.sweep.parameter == "L":
            if self.proposal.family != "hmc":
                raise ValueError("an L sweep needs the hmc family")
        return self

    @property
    def sweep_values(self) -> list[float]:
        return list(self.sweep.values) if self.sweep is not None else [float("nan")]


def _field_path(loc: tuple) -> str:
    return ".".join(str(p) for p in loc)


def parse_experiment_config(data: Any) -> ExperimentConfig:
    """Validate already-parsed configuration data.

    Raises:
        ConfigError: naming the first offending field.
    """
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping")
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = _field_path(first["loc"])
        raise ConfigError(f"{field}: {first['msg']}", field=field) from e


def load_experiment_config(path: Path) -> ExperimentConfig:
    """Read a JSON experiment file; other suffixes are read as YAML.

    Raises:
        ConfigError: unreadable file, parse error (with line) or invalid field.
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from e
    if Path(path).suffix.lower() == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(
                f"cannot parse {path} at line {e.lineno}, column {e.colno}", line=e.lineno
            ) from e
        return parse_experiment_config(data)
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        where = f" at line {line}, column {mark.column + 1}" if mark is not None else ""
        raise ConfigError(f"cannot parse {path}{where}", line=line) from e
    return parse_experiment_config(data)


def apply_sweep(config: ExperimentConfig, value: float) -> ExperimentConfig:
    """Config with the sweep parameter set to ``value``; the sweep is dropped."""
    if config.sweep is None:
        return config
    data = config.model_dump(by_alias=True, exclude_none=True)
    data.pop("sweep")
    proposal = data["proposal"]
    parameter = config.sweep.parameter
    if parameter == "h":
        proposal.pop("l", None)
        proposal["h"] = value
    elif parameter == "l":
        proposal.pop("h", None)
        proposal["l"] = value
    elif parameter == "theta":
        proposal["theta"] = value
    elif parameter == "L":
        proposal.pop("T", None)
        proposal["L"] = int(value)
    else:
        data["target"]["eigenvalues"]["d"] = int(value)
    return parse_experiment_config(data)
