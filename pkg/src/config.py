"""Numerical tolerances and size caps."""
import logging
import os
from dataclasses import dataclass, fields
from functools import lru_cache

logger = logging.getLogger(__name__)

_ENV_PREFIX = "SPLITMCMC_"


@dataclass(frozen=True)
class Tolerances:
    """Tolerances shared by every numerical module.

    Each field can be overridden with ``SPLITMCMC_<FIELD>`` (upper case),
    e.g. ``SPLITMCMC_LYAPUNOV_TOL=1e-12``.
    """

    symmetry_reject: float = 1e-8
    factor_reconstruct: float = 1e-10
    spectral_reconstruct: float = 1e-9
    solve_residual: float = 1e-9
    power_iteration_tol: float = 1e-10
    power_iteration_cap: int = 100_000
    lyapunov_tol: float = 1e-14
    lyapunov_cap: int = 1_000_000
    unit_radius_margin: float = 1e-12
    splitting_symmetry: float = 1e-10
    commute_tol: float = 1e-8
    degenerate_sigma: float = 1e-12
    resonance_tol: float = 1e-10
    resonance_warn: float = 1e-4
    # Dense representations are refused above this dimension.
    dense_cap: int = 4096
    # Full covariance accumulation and state traces stop here.
    covariance_cap: int = 64
    trace_cap: int = 64


def _parse_override(name: str, raw: str, default: float | int) -> float | int:
    """Parse one override, falling back to *default* on garbage."""
    caster = int if isinstance(default, int) else float
    try:
        value = caster(float(raw)) if caster is int else caster(raw)
    except ValueError:
        logger.warning(
            "Unparsable tolerance override %s=%r, using default %s",
            name,
            raw,
            default,
        )
        return default
    if value <= 0:
        logger.warning(
            "Tolerance override %s=%r must be positive, using default %s",
            name,
            raw,
            default,
        )
        return default
    return value


def load_tolerances_from_env() -> Tolerances:
    defaults = Tolerances()
    overrides: dict[str, float | int] = {}
    for f in fields(Tolerances):
        env_name = f"{_ENV_PREFIX}{f.name.upper()}"
        raw = os.environ.get(env_name, "")
        if raw:
            overrides[f.name] = _parse_override(
                env_name, raw, getattr(defaults, f.name)
            )
    if overrides:
        logger.info("Tolerance overrides: %s", overrides)
    return Tolerances(**overrides)


@lru_cache(maxsize=1)
def get_tolerances() -> Tolerances:
    """Return the process-wide tolerance record (loaded once)."""
    return load_tolerances_from_env()
