"""Exception types for the splitting sampler library."""


class SplitMcmcError(Exception):
    """Base exception for all library errors."""
    pass


class NotPositiveDefiniteError(SplitMcmcError):
    """Operator cannot serve as a covariance or precision."""
    def __init__(self, message: str, pivot: int | None = None) -> None:
        super().__init__(message)
        self.pivot = pivot


class ConvergenceFailureError(SplitMcmcError):
    """An iterative routine hit its iteration cap."""
    def __init__(self, message: str, iterations: int | None = None) -> None:
        super().__init__(message)
        self.iterations = iterations


class SingularError(SplitMcmcError):
    """A matrix that must be inverted is singular."""
    pass


class DimensionMismatchError(SplitMcmcError):
    """Vector or matrix dimensions disagree."""
    pass


class DenseCapError(SplitMcmcError):
    """Dense representation requested above the dense dimension cap."""
    pass


class NotConvergentError(SplitMcmcError):
    """Iteration matrix spectral radius is not below one."""
    def __init__(self, message: str, spectral_radius: float | None = None) -> None:
        super().__init__(message)
        self.spectral_radius = spectral_radius


class NotSymmetrizableError(SplitMcmcError):
    """G·Σ is not symmetric, so the symmetric splitting path does not apply."""
    pass


class StepTooLargeError(SplitMcmcError):
    """Langevin step size gives a non-convergent proposal."""
    pass


class UnstableError(SplitMcmcError):
    """Leapfrog step size violates h²·λ_max(VA) < 4."""
    pass


class NotSymmetricSplittingError(SplitMcmcError):
    """Quadratic acceptance formula needs a symmetric splitting."""
    pass


class EvaluationFailureError(SplitMcmcError):
    """A log-density evaluation failed or returned a non-finite value."""
    pass


class NotSimultaneouslyDiagonalizableError(SplitMcmcError):
    """Splitting matrices are not functions of the target precision."""
    pass


class NegativeRadicandError(SplitMcmcError):
    """A per-mode square root has a negative argument."""
    def __init__(self, message: str, mode: int | None = None) -> None:
        super().__init__(message)
        self.mode = mode


class UnknownDirectionError(SplitMcmcError):
    """Direction was neither registered before the run nor recoverable."""
    pass


class TraceTooShortError(SplitMcmcError):
    """Scalar trace is too short for autocorrelation analysis."""
    pass


class DegenerateTraceError(SplitMcmcError):
    """Scalar trace has zero variance."""
    pass


class ConfigError(SplitMcmcError):
    """Experiment configuration could not be parsed or validated."""
    def __init__(self, message: str, field: str | None = None, line: int | None = None) -> None:
        super().__init__(message)
        self.field = field
        self.line = line
