"""Named proposal families."""
from src.proposals.hmc import (
    HmcConfig,
    HmcTransfer,
    hamiltonian,
    hmc_mode_eigenvalues,
    hmc_proposal,
    hmc_transfer,
    leapfrog,
    mode_angles,
)
from src.proposals.langevin import (
    LangevinConfig,
    crank_nicolson,
    mala,
    theta_langevin,
    ula_chain,
)
from src.proposals.preconditioning import (
    precision_inverse,
    preconditioned_eigenvalues,
    preconditioned_precision,
    resolve_preconditioner,
)

__all__ = [
    "LangevinConfig", "mala", "theta_langevin", "crank_nicolson", "ula_chain",
    "HmcConfig", "HmcTransfer", "hmc_transfer", "hmc_proposal",
    "hmc_mode_eigenvalues", "mode_angles", "leapfrog", "hamiltonian",
    "resolve_preconditioner", "precision_inverse", "preconditioned_precision",
    "preconditioned_eigenvalues",
]
