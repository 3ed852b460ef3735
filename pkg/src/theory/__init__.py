"""Closed-form acceptance and jump-size predictions."""
from src.theory.acceptance import (
    AcceptancePrediction,
    expected_alpha_gaussian,
    lyapunov_ratios,
    mode_moments,
    predict_acceptance,
    t_term_arrays,
    t_terms,
)
from src.theory.jump import JumpPrediction, predict_jump
from src.theory.limits import (
    AsymptoticLimits,
    ScalingLaw,
    asymptotic_limits,
    mode_directions,
    optimal_langevin_scale,
    scale_for_acceptance,
    scaling_exponent,
    tau_from_lambdas,
)
from src.theory.model import (
    Family,
    HmcFamily,
    MalaFamily,
    SpectralSplittingModel,
    ThetaLangevinFamily,
    model_from_dense,
    model_from_family,
)

__all__ = [
    "SpectralSplittingModel", "MalaFamily", "ThetaLangevinFamily", "HmcFamily",
    "Family", "model_from_dense", "model_from_family",
    "AcceptancePrediction", "t_terms", "t_term_arrays", "mode_moments",
    "expected_alpha_gaussian", "lyapunov_ratios", "predict_acceptance",
    "JumpPrediction", "predict_jump",
    "AsymptoticLimits", "ScalingLaw", "asymptotic_limits", "scaling_exponent",
    "tau_from_lambdas", "optimal_langevin_scale", "scale_for_acceptance",
    "mode_directions",
]
