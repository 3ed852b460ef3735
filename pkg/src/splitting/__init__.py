"""Matrix splittings and AR(1) proposals."""
from src.splitting.conversions import (
    ar1_to_splitting,
    proposal_target,
    splitting_to_ar1,
    stationary_covariance,
    symmetric_ar1_to_splitting,
)
from src.splitting.models import (
    Ar1Proposal,
    MatrixSplitting,
    ProposalTarget,
    is_symmetric_matrix,
)

__all__ = [
    "Ar1Proposal", "MatrixSplitting", "ProposalTarget", "is_symmetric_matrix",
    "ar1_to_splitting", "symmetric_ar1_to_splitting", "splitting_to_ar1",
    "proposal_target", "stationary_covariance",
]
