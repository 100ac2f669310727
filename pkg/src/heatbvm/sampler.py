"""Random-walk Metropolis-Hastings for a scalar parameter."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Union

import numpy as np

from . import rng

TARGET_ACCEPTANCE = 0.35


@dataclass(frozen=True)
class MHConfig:
    """Settings for one chain.

    ``proposal_sd="auto"`` starts from 2.4 times a finite-difference Laplace
    scale at ``init`` and adapts the scale during burn-in only; the kernel is
    fixed from iteration ``burn_in + 1`` on.
    """

    iterations: int
    init: float
    seed: int
    burn_in: int = 1000
    proposal_sd: Union[float, str] = "auto"

    def __post_init__(self):
        if self.iterations < 2:
            raise ValueError("iterations must be >= 2")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError("burn_in must satisfy 0 <= burn_in < iterations")
        if self.proposal_sd != "auto" and not float(self.proposal_sd) > 0:
            raise ValueError("proposal_sd must be positive or 'auto'")


@dataclass(frozen=True)
class Chain:
    samples: np.ndarray
    accepted_flags: np.ndarray
    burn_in: int
    proposal_sd: float
    config: MHConfig | None = None

    @property
    def accepted(self) -> int:
        return int(np.count_nonzero(self.accepted_flags))

    @property
    def kept(self) -> np.ndarray:
        """Samples after burn-in."""
        return self.samples[self.burn_in:]

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class ChainSummary:
    posterior_mean: float
    posterior_var: float
    ess: float


def laplace_scale(logp: Callable[[float], float], x: float, rel_step: float = 1e-3) -> float:
    """Standard deviation of the Gaussian matching ``logp``'s curvature at ``x``."""
    h = abs(x) * rel_step if x != 0 else rel_step
    sd = None
    for _ in range(4):
        lo, mid, hi = logp(x - h), logp(x), logp(x + h)
        d2 = (hi - 2.0 * mid + lo) / h**2
        if not (math.isfinite(d2) and d2 < 0):
            break
        sd = 1.0 / math.sqrt(-d2)
        h = sd / 10.0
    if sd is None:
        return abs(x) * 0.1 if x != 0 else 1.0
    return sd


def run_mh(config: MHConfig, target: Callable[[float], float]) -> Chain:
    """Run one chain of length ``config.iterations`` starting at ``config.init``.

    Proposals with ``target == -inf`` (outside the support) are rejected.
    """
    N = config.iterations
    current = float(config.init)
    logp = target(current)
    if not math.isfinite(logp):
        raise ValueError(f"log target is not finite at init={current}")

    adapt = config.proposal_sd == "auto"
    log_sd = math.log(2.4 * laplace_scale(target, current) if adapt else float(config.proposal_sd))

    gen = rng.stream(config.seed, rng.SAMPLER)
    steps = gen.standard_normal(N - 1)
    log_u = np.log(gen.random(N - 1))

    samples = np.empty(N)
    flags = np.zeros(N, dtype=bool)
    samples[0] = current
    for t in range(1, N):
        proposal = current + math.exp(log_sd) * steps[t - 1]
        logp_new = target(proposal)
        log_ratio = logp_new - logp
        if log_u[t - 1] < log_ratio:
            current, logp = proposal, logp_new
            flags[t] = True
        samples[t] = current
        if adapt and t < config.burn_in:
            acc = math.exp(min(0.0, log_ratio))
            log_sd += (acc - TARGET_ACCEPTANCE) * t ** -0.6
    return Chain(samples, flags, config.burn_in, math.exp(log_sd), config)


def acceptance_rate(chain: Chain) -> float:
    if len(chain) < 2:
        raise ValueError("need at least two iterations")
    return chain.accepted / (len(chain) - 1)


def autocovariance(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float) - np.mean(x)
    n = x.size
    size = 1 << (2 * n - 1).bit_length()
    spec = np.fft.rfft(x, size)
    return np.fft.irfft(spec * np.conj(spec), size)[:n] / n


def effective_sample_size(x: np.ndarray) -> float:
    """Geyer's initial monotone sequence estimator."""
    x = np.asarray(x, dtype=float)
    n = x.size
    acov = autocovariance(x)
    if acov[0] <= 0:
        return 1.0
    rho = acov / acov[0]
    npairs = n // 2
    pairs = rho[0:2 * npairs:2] + rho[1:2 * npairs:2]
    nonpos = np.flatnonzero(pairs <= 0)
    pairs = pairs[: nonpos[0]] if nonpos.size else pairs
    pairs = np.minimum.accumulate(pairs)
    tau = -1.0 + 2.0 * float(np.sum(pairs))
    tau = max(tau, 1.0 / n)
    return n / tau


def summarize(chain: Chain, min_samples: int = 100) -> ChainSummary:
    kept = chain.kept
    if kept.size < min_samples:
        raise ValueError(f"only {kept.size} post-burn-in samples, need {min_samples}")
    # shifting by the first sample keeps tightly concentrated chains exact
    d = kept - kept[0]
    return ChainSummary(float(kept[0] + np.mean(d)), float(np.var(d)), effective_sample_size(d))


def save_chain(chain: Chain, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "theta", "accepted_flag"])
        for t, (v, a) in enumerate(zip(chain.samples, chain.accepted_flags), start=1):
            w.writerow([t, format(float(v), ".17g"), int(a)])


def load_chain(path, burn_in: int = 0) -> Chain:
    with open(Path(path), newline="") as fh:
        rows = list(csv.DictReader(fh))
    samples = np.array([float(r["theta"]) for r in rows])
    flags = np.array([r["accepted_flag"] == "1" for r in rows])
    if not 0 <= burn_in < samples.size:
        raise ValueError(f"burn_in {burn_in} out of range for chain of length {samples.size}")
    return Chain(samples, flags, burn_in, float("nan"))
