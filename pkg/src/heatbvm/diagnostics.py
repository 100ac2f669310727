"""Compare sampled marginal posteriors with the limiting normal."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .prior import TruthSpec
from .sampler import Chain, acceptance_rate, summarize
from .spectral import efficient_fisher


@dataclass(frozen=True)
class LimitingNormal:
    center: float
    variance: float

    def __post_init__(self):
        if not self.variance > 0:
            raise ValueError("variance must be positive")

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)

    def cdf(self, x):
        return ndtr((np.asarray(x, dtype=float) - self.center) / self.sd)

    def pdf(self, x):
        z = (np.asarray(x, dtype=float) - self.center) / self.sd
        return np.exp(-0.5 * z**2) / (self.sd * math.sqrt(2 * math.pi))


def limiting_normal(center: float, truth: TruthSpec, T: float, n: float) -> LimitingNormal:
    """Normal with the given center and variance ``1 / (n I_eff(theta0, f0))``."""
    info = efficient_fisher(truth.theta0, truth.f0, T)
    if not info > 0:
        raise ValueError("efficient information is zero; f0 must be nonzero")
    return LimitingNormal(float(center), 1.0 / (n * info))


def ks_distance(samples, ref: LimitingNormal) -> float:
    """Kolmogorov-Smirnov statistic between the empirical CDF of ``samples`` and ``ref``."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n < 100:
        raise ValueError("need at least 100 samples")
    cdf = ref.cdf(x)
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(0, n) / n
    return float(max(upper.max(), lower.max()))


def tv_distance_histogram(samples, ref: LimitingNormal, bins: int = 50) -> float:
    """Binned total variation estimate on ``center +/- 6 sd``; both tails count as extra bins."""
    if bins < 10:
        raise ValueError("need at least 10 bins")
    x = np.asarray(samples, dtype=float)
    if x.size < 1000:
        raise ValueError("need at least 1000 samples")
    # bin in standardised units so the estimate is invariant under affine maps
    z = (x - ref.center) / ref.sd
    edges = np.linspace(-6.0, 6.0, bins + 1)
    counts = np.histogram(z, bins=edges)[0]
    p = np.concatenate([[np.count_nonzero(z < -6.0)], counts, [np.count_nonzero(z > 6.0)]]) / x.size
    cdf = ndtr(edges)
    q = np.concatenate([[cdf[0]], np.diff(cdf), [1.0 - cdf[-1]]])
    return float(0.5 * np.abs(p - q).sum())


@dataclass(frozen=True)
class BiasReport:
    abs_bias: float
    standardized_bias: float


def bias_report(chain: Chain, truth: TruthSpec) -> BiasReport:
    s = summarize(chain)
    abs_bias = abs(s.posterior_mean - float(truth.theta0))
    sd = math.sqrt(s.posterior_var)
    return BiasReport(abs_bias, abs_bias / sd if sd > 0 else 0.0)


def diagnostics_record(chain: Chain, truth: TruthSpec, T: float, n: float, alpha=None, seed=None, bins: int = 50) -> dict:
    """Per-run diagnostics, keyed as in the run's ``diagnostics.json``."""
    s = summarize(chain)
    ref = limiting_normal(s.posterior_mean, truth, T, n)
    bias = bias_report(chain, truth)
    return {
        "alpha": alpha,
        "seed": seed,
        "posterior_mean": s.posterior_mean,
        "posterior_var": s.posterior_var,
        "ks": ks_distance(chain.kept, ref),
        "tv": tv_distance_histogram(chain.kept, ref, bins),
        "abs_bias": bias.abs_bias,
        "standardized_bias": bias.standardized_bias,
        "acceptance_rate": acceptance_rate(chain),
        "ess": s.ess,
    }
