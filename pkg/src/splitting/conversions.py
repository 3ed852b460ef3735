"""Conversions between AR(1) proposals and matrix splittings."""
from __future__ import annotations

import logging

import numpy as np

from src.config import get_tolerances
from src.exceptions import (
    ConvergenceFailureError,
    NotConvergentError,
    NotSymmetrizableError,
)
from src.linalg import SymmetricOperator, solve, to_dense
from src.splitting.models import (
    Ar1Proposal,
    MatrixSplitting,
    ProposalTarget,
    is_symmetric_matrix,
)

logger = logging.getLogger(__name__)


def _require_convergent_ar1(p: Ar1Proposal) -> float:
    rho = p.spectral_radius()
    if rho >= 1.0 - get_tolerances().unit_radius_margin:
        raise NotConvergentError(
            f"iteration matrix has spectral radius {rho:.6g} >= 1",
            spectral_radius=rho,
        )
    return rho


def stationary_covariance(G: np.ndarray, Sigma: np.ndarray) -> np.ndarray:
    """Fixed point of ``C = Σ + G·C·Gᵀ`` (the series ``Σₗ GˡΣ(Gᵀ)ˡ``).

    Raises:
        ConvergenceFailureError: the iteration cap was reached.
    """
    tol = get_tolerances()
    C = np.array(Sigma, dtype=float)
    for k in range(1, tol.lyapunov_cap + 1):
        C_next = Sigma + G @ C @ G.T
        delta = np.linalg.norm(C_next - C)
        C = C_next
        if delta <= tol.lyapunov_tol * np.linalg.norm(C):
            logger.debug("Lyapunov iteration converged after %d steps", k)
            return 0.5 * (C + C.T)
    raise ConvergenceFailureError(
        f"Lyapunov iteration did not converge in {tol.lyapunov_cap} steps",
        iterations=tol.lyapunov_cap,
    )


def ar1_to_splitting(p: Ar1Proposal) -> MatrixSplitting:
    """General conversion: ``𝒜 = C⁻¹``, ``M = 𝒜(I−G)⁻¹``, ``N = MG``, ``β = Mg``.

    ``C`` is the stationary covariance of the proposal chain.

    Raises:
        NotConvergentError: spectral radius of ``G`` is not below one.
        ConvergenceFailureError: the Lyapunov iteration hit its cap.
    """
    _require_convergent_ar1(p)
    if p.is_diagonal:
        G, S = p.G.diag, p.Sigma.diag
        precision = (1.0 - G**2) / S
        M = precision / (1.0 - G)
        return MatrixSplitting(
            M=SymmetricOperator.from_diagonal(M),
            N=SymmetricOperator.from_diagonal(M * G),
            beta=M * p.g,
            ar1=p,
        )

    G = to_dense(p.G)
    C = stationary_covariance(G, p.Sigma.to_dense())
    precision = SymmetricOperator.from_dense(solve(SymmetricOperator.from_dense(C), np.eye(p.dim)))
    I_minus_G = np.eye(p.dim) - G
    # M = 𝒜(I−G)⁻¹  ⇔  Mᵀ = (I−G)⁻ᵀ𝒜
    M = solve(I_minus_G.T, precision.to_dense()).T
    return MatrixSplitting(M=M, N=M @ G, beta=M @ p.g, ar1=p)


def symmetric_ar1_to_splitting(p: Ar1Proposal) -> MatrixSplitting:
    """Symmetric conversion for ``G·Σ`` symmetric.

    ``M = Σ⁻¹(I+G)``, ``𝒜 = Σ⁻¹(I−G²)``, ``N = MG``, ``β = Mg``; ``M`` and
    ``N`` are symmetric.

    Raises:
        NotConvergentError: spectral radius of ``G`` is not below one.
        NotSymmetrizableError: ``G·Σ`` is not symmetric; use
            :func:`ar1_to_splitting`.
    """
    _require_convergent_ar1(p)
    if p.is_diagonal:
        G, S = p.G.diag, p.Sigma.diag
        M = (1.0 + G) / S
        return MatrixSplitting(
            M=SymmetricOperator.from_diagonal(M),
            N=SymmetricOperator.from_diagonal(M * G),
            beta=M * p.g,
            ar1=p,
        )

    G = to_dense(p.G)
    GS = G @ p.Sigma.to_dense()
    if not is_symmetric_matrix(GS):
        raise NotSymmetrizableError(
            "G·Σ is not symmetric; the general conversion must be used"
        )
    M = p.noise.solve(np.eye(p.dim) + G)
    N = M @ G
    return MatrixSplitting(
        M=SymmetricOperator.from_dense(M),
        N=SymmetricOperator.from_dense(N),
        beta=M @ p.g,
        ar1=p,
    )


def splitting_to_ar1(s: MatrixSplitting) -> Ar1Proposal:
    """``G = M⁻¹N``, ``g = M⁻¹β``, ``Σ = M⁻¹(Mᵀ+N)M⁻ᵀ``.

    Raises:
        SingularError: ``M`` is singular.
    """
    if s.is_diagonal:
        M, N = s.M.diag, s.N.diag
        return Ar1Proposal(
            G=SymmetricOperator.from_diagonal(N / M),
            g=s.beta / M,
            Sigma=SymmetricOperator.from_diagonal((M + N) / M**2),
        )
    M = to_dense(s.M)
    G = solve(M, to_dense(s.N))
    g = solve(M, s.beta)
    X = solve(M, s.noise_covariance.to_dense())
    Sigma = solve(M, X.T)
    return Ar1Proposal(G=G, g=g, Sigma=SymmetricOperator.from_dense(Sigma))


def proposal_target(s: MatrixSplitting) -> ProposalTarget:
    """``N(𝒜⁻¹β, 𝒜⁻¹)``, the limit of the unadjusted proposal chain.

    Raises:
        NotConvergentError: the splitting is not convergent.
    """
    s.require_convergent()
    mean = s.precision_factor.solve(s.beta)
    mean.setflags(write=False)
    return ProposalTarget(mean=mean, precision=s.precision)
