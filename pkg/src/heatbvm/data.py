"""Synthetic observations in the truncated sequence model.

Channel one observes the initial condition, channel two the solution at time
``T``, both coefficient-wise in white noise of level ``1/sqrt(n)``.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import rng
from .prior import TruthSpec
from .spectral import Diffusivity, SineCoefficients, eigenvalues


@dataclass(frozen=True)
class Observations:
    x1: np.ndarray
    x2: np.ndarray
    n: float
    T: float
    seed: int | None = None
    noise_scale: float = 1.0
    truth: TruthSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        x1 = np.array(self.x1, dtype=float).reshape(-1)
        x2 = np.array(self.x2, dtype=float).reshape(-1)
        if x1.shape != x2.shape or x1.size < 1:
            raise ValueError("x1 and x2 must be nonempty and of equal length")
        if not (np.all(np.isfinite(x1)) and np.all(np.isfinite(x2))):
            raise ValueError("observations must be finite")
        if not self.n > 0:
            raise ValueError("n must be positive")
        for a in (x1, x2):
            a.setflags(write=False)
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    @property
    def m(self) -> int:
        return self.x1.size


def generate(truth: TruthSpec, T: float, n: float, m: int, seed: int, noise_scale: float = 1.0) -> Observations:
    """Draw one dataset; a pure function of its arguments."""
    if not n > 0:
        raise ValueError("n must be positive")
    if noise_scale < 0:
        raise ValueError("noise_scale must be nonnegative")
    if truth.f0.m < m:
        raise ValueError(f"truth has only {truth.f0.m} coefficients, need {m}")
    f0 = truth.f0.coeffs[:m]
    scale = noise_scale / math.sqrt(n)
    z1 = rng.coefficient_normals(seed, rng.NOISE_X1, m)
    z2 = rng.coefficient_normals(seed, rng.NOISE_X2, m)
    x1 = f0 + scale * z1
    x2 = eigenvalues(truth.theta0, T, m) * f0 + scale * z2
    return Observations(x1, x2, n=n, T=T, seed=seed, noise_scale=noise_scale, truth=truth)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def save(obs: Observations, csv_path, json_path=None) -> None:
    """Write ``k,x1,x2`` CSV and a JSON sidecar with the generating metadata."""
    csv_path = Path(csv_path)
    json_path = Path(json_path) if json_path else csv_path.with_suffix(".json")
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "x1", "x2"])
        for k, (a, b) in enumerate(zip(obs.x1, obs.x2), start=1):
            w.writerow([k, _fmt(a), _fmt(b)])
    meta = {"n": obs.n, "m": obs.m, "T": obs.T, "seed": obs.seed, "noise_scale": obs.noise_scale}
    if obs.truth is not None:
        meta["theta0"] = float(obs.truth.theta0)
        meta["beta"] = obs.truth.beta
        meta["f0"] = [float(v) for v in obs.truth.f0.coeffs]
    json_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def truth_from_meta(meta: dict) -> TruthSpec:
    return TruthSpec(Diffusivity(meta["theta0"]), SineCoefficients(meta["f0"]), meta["beta"])


def load(csv_path, json_path=None) -> Observations:
    csv_path = Path(csv_path)
    json_path = Path(json_path) if json_path else csv_path.with_suffix(".json")
    meta = json.loads(json_path.read_text())
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    ks = [int(r["k"]) for r in rows]
    if ks != list(range(1, len(rows) + 1)):
        raise ValueError(f"{csv_path}: k column must be 1..m in order")
    truth = truth_from_meta(meta) if "f0" in meta else None
    return Observations(
        [float(r["x1"]) for r in rows],
        [float(r["x2"]) for r in rows],
        n=meta["n"],
        T=meta["T"],
        seed=meta.get("seed"),
        noise_scale=meta.get("noise_scale", 1.0),
        truth=truth,
    )
