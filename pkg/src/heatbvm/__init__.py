"""Semiparametric Bayesian inference for the diffusivity in the 1-D heat equation."""
from .data import Observations, generate
from .diagnostics import LimitingNormal, bias_report, ks_distance, limiting_normal, tv_distance_histogram
from .posterior import (
    CoefficientPosterior,
    PosteriorTarget,
    conditional_f_posterior,
    log_likelihood,
    log_marginal_theta,
)
from .prior import SeriesPrior, TruthSpec, bvm_zone, contraction_rate, ground_truth_f0, sample_prior, sigma_k
from .sampler import Chain, MHConfig, acceptance_rate, run_mh, summarize
from .spectral import (
    Diffusivity,
    ModelConfig,
    SineCoefficients,
    apply_k,
    apply_kdot,
    efficient_fisher,
    heat_solution,
    l_inner_product,
    least_favourable_direction,
    operator_diff_norm,
    parametric_fisher,
    sobolev_norm_sq,
    taylor_remainder_norm,
)

__version__ = "0.1.0"
