"""Gaussian series prior on the initial condition and regularity predicates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rng
from .spectral import Diffusivity, SineCoefficients, mode_indices


def sigma_k(alpha: float, k) -> np.ndarray | float:
    """Prior standard deviation ``(k + 1)^(-1/2 - alpha)`` of coefficient ``k``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    out = (np.asarray(k, dtype=float) + 1.0) ** (-0.5 - alpha)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SeriesPrior:
    alpha: float
    m: int

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @property
    def sigmas(self) -> np.ndarray:
        return sigma_k(self.alpha, mode_indices(self.m))

    @property
    def precisions(self) -> np.ndarray:
        """``1 / sigma_k^2 = (k + 1)^(1 + 2 alpha)``."""
        return (mode_indices(self.m) + 1.0) ** (1.0 + 2.0 * self.alpha)


def sample_prior(prior: SeriesPrior, rng_seed: int) -> SineCoefficients:
    z = rng.coefficient_normals(rng_seed, rng.PRIOR, prior.m)
    return SineCoefficients(prior.sigmas * z)


@dataclass(frozen=True)
class TruthSpec:
    theta0: Diffusivity
    f0: SineCoefficients
    beta: float

    def __post_init__(self):
        if not np.any(self.f0.coeffs != 0):
            raise ValueError("f0 must be nonzero")
        if not self.beta > 0:
            raise ValueError("beta must be positive")


def ground_truth_f0(m: int) -> SineCoefficients:
    """Coefficients ``k^-2``; regularity 3/2 in the sine-Sobolev sense."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return SineCoefficients(mode_indices(m) ** -2.0)


F0_FAMILIES = {"inverse_square": ground_truth_f0}


def bvm_zone(alpha: float, beta: float) -> bool:
    """True iff ``1/2 < alpha < 2 beta - 1/2``."""
    return 0.5 < alpha < 2.0 * beta - 0.5


def contraction_rate(alpha: float, beta: float, n: float) -> float:
    """Posterior contraction rate ``n^(-min(alpha, beta) / (1 + 2 alpha))`` without constant."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n ** (-min(alpha, beta) / (1.0 + 2.0 * alpha))
