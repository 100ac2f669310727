"""Likelihood, conjugate marginalisation of the initial condition, and the
log marginal posterior of theta under a uniform prior on ``(theta_lo, theta_hi)``.

Everything is computed in natural-log space.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Observations
from .prior import SeriesPrior
from .spectral import SineCoefficients, ThetaLike, mode_indices, safe_exp

LOG_2PI = math.log(2.0 * math.pi)


def _forward_factors(theta: float, T: float, m: int) -> np.ndarray:
    return safe_exp(-theta * math.pi**2 * T * mode_indices(m) ** 2)


def log_likelihood(theta: ThetaLike, f: SineCoefficients, obs: Observations, T: float) -> float:
    """Log density of both observation channels given ``(theta, f)``."""
    if f.m != obs.m:
        raise ValueError(f"length mismatch: f has {f.m} coefficients, data has {obs.m}")
    a = _forward_factors(float(theta), T, obs.m)
    r1 = obs.x1 - f.coeffs
    r2 = obs.x2 - a * f.coeffs
    quad = math.fsum(np.concatenate([r1**2, r2**2]))
    return obs.m * math.log(obs.n / (2.0 * math.pi)) - 0.5 * obs.n * quad


def log_prior_f(f: SineCoefficients, prior: SeriesPrior) -> float:
    prec = prior.precisions
    return math.fsum(0.5 * np.log(prec) - 0.5 * LOG_2PI - 0.5 * prec * f.coeffs**2)


@dataclass(frozen=True)
class CoefficientPosterior:
    mean: np.ndarray
    var: np.ndarray

    def logpdf(self, f: SineCoefficients) -> float:
        return math.fsum(-0.5 * np.log(self.var) - 0.5 * LOG_2PI - 0.5 * (f.coeffs - self.mean) ** 2 / self.var)


def conditional_f_posterior(theta: ThetaLike, obs: Observations, prior: SeriesPrior, T: float) -> CoefficientPosterior:
    """Gaussian posterior of each coefficient ``f_k`` given theta and the data."""
    if prior.m != obs.m:
        raise ValueError("prior and data truncation differ")
    a = _forward_factors(float(theta), T, obs.m)
    p = obs.n + obs.n * a**2 + prior.precisions
    mean = (obs.n * obs.x1 + obs.n * a * obs.x2) / p
    return CoefficientPosterior(mean, 1.0 / p)


@dataclass(frozen=True)
class PosteriorTarget:
    """Log marginal posterior density of theta, up to an additive constant.

    ``literal_eq11`` switches the per-coefficient precision from
    ``n + n a_k^2 + s_k^-2`` (exact conjugate marginal) to the variant with
    ``n a_k`` in place of ``n a_k^2``; kept only for comparison.
    """

    obs: Observations
    prior: SeriesPrior
    T: float
    theta_lo: float
    theta_hi: float
    literal_eq11: bool = False

    def __post_init__(self):
        if self.prior.m != self.obs.m:
            raise ValueError("prior and data truncation differ")
        if not 0 < self.theta_lo < self.theta_hi:
            raise ValueError("need 0 < theta_lo < theta_hi")

    def in_support(self, theta: float) -> bool:
        return self.theta_lo < theta < self.theta_hi

    def __call__(self, theta: float) -> float:
        return log_marginal_theta(theta, self)

    def grid(self, thetas) -> np.ndarray:
        """Vectorised evaluation over an array of theta values."""
        thetas = np.asarray(thetas, dtype=float)
        out = np.full(thetas.shape, -np.inf)
        inside = (thetas > self.theta_lo) & (thetas < self.theta_hi)
        th = thetas[inside]
        c = math.pi**2 * self.T * mode_indices(self.obs.m) ** 2
        a = safe_exp(-np.outer(th, c))
        n = self.obs.n
        p = n + n * (a if self.literal_eq11 else a**2) + self.prior.precisions
        b = n * self.obs.x1 + n * a * self.obs.x2
        out[inside] = np.sum(-0.5 * np.log(p) + b**2 / (2.0 * p), axis=1)
        return out


def log_marginal_theta(theta: ThetaLike, target: PosteriorTarget) -> float:
    theta = float(theta)
    if not target.in_support(theta):
        return -math.inf
    obs = target.obs
    a = _forward_factors(theta, target.T, obs.m)
    n = obs.n
    p = n + n * (a if target.literal_eq11 else a**2) + target.prior.precisions
    b = n * obs.x1 + n * a * obs.x2
    return math.fsum(-0.5 * np.log(p) + b**2 / (2.0 * p))
