"""Langevin proposals: MALA, ULA and the θ-discretized preconditioned family."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from src.exceptions import StepTooLargeError
from src.linalg import SymmetricOperator, operator_power, solve, spectral_decompose
from src.proposals.preconditioning import (
    preconditioned_precision,
    resolve_preconditioner,
)
from src.splitting import Ar1Proposal, MatrixSplitting
from src.target import GaussianTarget

logger = logging.getLogger(__name__)

ProposalPair = tuple[Ar1Proposal, MatrixSplitting]


@dataclass(frozen=True)
class LangevinConfig:
    """Step ``h``, implicitness ``θ`` and preconditioner ``V`` (identity if None)."""

    h: float
    theta: float = 0.0
    V: Optional[SymmetricOperator] = None

    def __post_init__(self) -> None:
        if not np.isfinite(self.h) or self.h <= 0:
            raise ValueError(f"step size must be positive, got {self.h}")
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError(f"theta must lie in [0, 1], got {self.theta}")


def _max_eigenvalue(target: GaussianTarget) -> float:
    if target.is_diagonal:
        return float(np.max(target.precision.diag))
    return float(spectral_decompose(target.precision).eigenvalues[-1])


def mala(
    target: GaussianTarget, h: float, require_convergent: bool = True
) -> ProposalPair:
    """MALA proposal ``y = (I − (h/2)A)x + (h/2)b + √h·ξ`` and its splitting.

    The splitting is ``M = (2/h)W``, ``N = (2/h)W(I − (h/2)A)``, ``𝒜 = WA``,
    ``β = Wb`` with ``W = I − (h/4)A``; it is convergent iff ``h·λ_max(A) < 4``.

    Raises:
        StepTooLargeError: ``h·λ_max(A) ≥ 4`` while a convergent splitting was
            required.
    """
    if not np.isfinite(h) or h <= 0:
        raise ValueError(f"step size must be positive, got {h}")
    lam_max = _max_eigenvalue(target)
    if h * lam_max >= 4.0:
        message = f"h·λ_max = {h * lam_max:.6g} >= 4, MALA splitting is not convergent"
        if require_convergent:
            raise StepTooLargeError(message)
        logger.warning(message)

    b = target.shift
    Sigma = SymmetricOperator.from_diagonal(np.full(target.dim, h))
    if target.is_diagonal:
        a = target.precision.diag
        G = 1.0 - 0.5 * h * a
        W = 1.0 - 0.25 * h * a
        ar1 = Ar1Proposal(G=SymmetricOperator.from_diagonal(G), g=0.5 * h * b, Sigma=Sigma)
        M = (2.0 / h) * W
        splitting = MatrixSplitting(
            M=SymmetricOperator.from_diagonal(M),
            N=SymmetricOperator.from_diagonal(M * G),
            beta=W * b,
            ar1=ar1,
        )
        return ar1, splitting

    A = target.precision.to_dense()
    I = np.eye(target.dim)
    G = I - 0.5 * h * A
    W = I - 0.25 * h * A
    ar1 = Ar1Proposal(G=G, g=0.5 * h * b, Sigma=Sigma)
    M = (2.0 / h) * W
    splitting = MatrixSplitting(
        M=SymmetricOperator.from_dense(M),
        N=SymmetricOperator.from_dense(M @ G),
        beta=W @ b,
        ar1=ar1,
    )
    return ar1, splitting


def theta_langevin(target: GaussianTarget, cfg: LangevinConfig) -> ProposalPair:
    """θ-discretized preconditioned Langevin proposal and its splitting.

    With ``P = I + (θh/2)VA`` the AR(1) form is ``G = P⁻¹(I − ((1−θ)h/2)VA)``,
    ``g = (h/2)P⁻¹Vb`` and ``Σ = P⁻¹(hV)P⁻ᵀ``. The splitting is built in the
    symmetrized coordinates ``B = V^{1/2}AV^{1/2}`` and mapped back, giving
    ``𝒜 = W̃A`` and ``β = W̃b`` with ``W̃ = I + (θ−½)(h/2)AV``.

    θ = 0 with V = I is MALA; θ = ½ leaves the target invariant (𝒜 = A).

    Raises:
        SingularError: ``P`` is singular.
    """
    h, theta = cfg.h, cfg.theta
    V = resolve_preconditioner(target, cfg.V)
    b = target.shift
    shift = (theta - 0.5) * 0.5 * h

    if target.is_diagonal and V.is_diagonal:
        a, v = target.precision.diag, V.diag
        t = h * a * v
        P = 1.0 + 0.5 * theta * t
        Q = 1.0 - 0.5 * (1.0 - theta) * t
        W = 1.0 + shift * a * v
        ar1 = Ar1Proposal(
            G=SymmetricOperator.from_diagonal(Q / P),
            g=0.5 * h * v * b / P,
            Sigma=SymmetricOperator.from_diagonal(h * v / P**2),
        )
        splitting = MatrixSplitting(
            M=SymmetricOperator.from_diagonal((2.0 / h) * W * P / v),
            N=SymmetricOperator.from_diagonal((2.0 / h) * W * Q / v),
            beta=W * b,
            ar1=ar1,
        )
        return ar1, splitting

    d = target.dim
    I = np.eye(d)
    A = target.precision.to_dense()
    Vd = V.to_dense()
    VA = Vd @ A
    P = I + 0.5 * theta * h * VA
    G = solve(P, I - 0.5 * (1.0 - theta) * h * VA)
    g = 0.5 * h * solve(P, Vd @ b)
    X = solve(P, h * Vd)
    Sigma = SymmetricOperator.from_dense(solve(P, X.T))
    ar1 = Ar1Proposal(G=G, g=g, Sigma=Sigma)

    B = preconditioned_precision(target, V).to_dense()
    root_inv = operator_power(V, -0.5).to_dense()
    W = I + shift * B
    left = (2.0 / h) * root_inv @ W
    M = left @ (I + 0.5 * theta * h * B) @ root_inv
    N = left @ (I - 0.5 * (1.0 - theta) * h * B) @ root_inv
    W_tilde = I + shift * A @ Vd
    splitting = MatrixSplitting(
        M=SymmetricOperator.from_dense(M),
        N=SymmetricOperator.from_dense(N),
        beta=W_tilde @ b,
        ar1=ar1,
    )
    return ar1, splitting


def crank_nicolson(
    target: GaussianTarget, h: float, V: Optional[SymmetricOperator] = None
) -> ProposalPair:
    """θ = ½ member of the family; its proposal target is the target itself."""
    return theta_langevin(target, LangevinConfig(h=h, theta=0.5, V=V))


def ula_chain(
    target: GaussianTarget,
    h: float,
    n_steps: int,
    rng,
    burn_in: int = 0,
    directions: Sequence = (),
    store_trace: bool = False,
):
    """Run the MALA AR(1) process without accept/reject.

    The chain starts from a draw of the proposal target ``N(A⁻¹b, 𝒜⁻¹)``,
    its stationary law, so the streamed moments estimate the ULA equilibrium
    rather than the target.

    Raises:
        StepTooLargeError: ``h·λ_max(A) ≥ 4``.
    """
    from src.sampler.chain import ChainConfig, StartKind, run_chain

    pair = mala(target, h, require_convergent=True)
    cfg = ChainConfig(
        n_steps=n_steps,
        burn_in=burn_in,
        start=StartKind.PROPOSAL_TARGET,
        directions=tuple(directions),
        store_trace=store_trace,
    )
    return run_chain(target, pair, cfg, rng, adjust=False)
