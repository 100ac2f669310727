"""Batch runner: data generation, sampling, diagnostics and plots per (alpha, seed)."""
from __future__ import annotations

import csv
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np
from scipy.optimize import minimize_scalar

from . import data as data_mod
from .config import ExperimentConfig
from .diagnostics import diagnostics_record, limiting_normal
from .posterior import PosteriorTarget
from .prior import F0_FAMILIES, SeriesPrior, TruthSpec
from .sampler import MHConfig, run_mh, save_chain
from .spectral import Diffusivity
from .svg import histogram_svg, trace_svg

log = logging.getLogger(__name__)

OUT_ENV = "HEATBVM_OUT"
SUMMARY_FIELDS = [
    "alpha", "seed", "data_seed", "posterior_mean", "posterior_var", "ks", "tv",
    "abs_bias", "standardized_bias", "acceptance_rate", "ess",
]


def find_mode(target: PosteriorTarget, points: int = 2001) -> float:
    """Maximiser of the log marginal: log-spaced grid search, then bounded refinement."""
    grid = np.geomspace(target.theta_lo, target.theta_hi, points + 2)[1:-1]
    vals = target.grid(grid)
    i = int(np.argmax(vals))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    res = minimize_scalar(lambda t: -target(t), bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    best = float(res.x) if res.success and -res.fun >= vals[i] else float(grid[i])
    return best


def build_truth(config: ExperimentConfig) -> TruthSpec:
    m = config.model
    theta0 = Diffusivity(config.truth.theta0, m.theta_lo, m.theta_hi)
    return TruthSpec(theta0, F0_FAMILIES[config.truth.f0](m.m), config.truth.beta)


def resolve_out(config: ExperimentConfig, out=None) -> Path:
    if out is not None:
        return Path(out)
    if os.environ.get(OUT_ENV):
        return Path(os.environ[OUT_ENV])
    return Path(config.out)


def _fmt_alpha(a: float) -> str:
    return format(a, "g")


def _dataset(config: ExperimentConfig, truth: TruthSpec, seed: int, root: Path):
    m = config.model
    obs = data_mod.generate(truth, m.T, m.n, m.m, seed, config.data.noise_scale)
    d = root / "data" / f"seed={seed}"
    d.mkdir(parents=True, exist_ok=True)
    data_mod.save(obs, d / "observations.csv", d / "observations.json")
    return obs


def _run_one(config: ExperimentConfig, truth: TruthSpec, obs, alpha: float, seed: int, root: Path) -> dict:
    m = config.model
    target = PosteriorTarget(obs, SeriesPrior(alpha, m.m), m.T, m.theta_lo, m.theta_hi)
    init = find_mode(target) if config.mcmc.init == "mode" else float(config.mcmc.init)
    mh = MHConfig(config.mcmc.iterations, init, seed, config.mcmc.burn_in, config.mcmc.proposal_sd)
    chain = run_mh(mh, target)

    record = diagnostics_record(chain, truth, m.T, m.n, alpha=alpha, seed=seed)
    record["data_seed"] = obs.seed
    meta = {
        "theta0": float(truth.theta0),
        "theta_lo": m.theta_lo,
        "theta_hi": m.theta_hi,
        "T": m.T,
        "n": m.n,
        "m": m.m,
        "init": init,
        "proposal_sd": chain.proposal_sd,
        "iterations": mh.iterations,
        "burn_in": mh.burn_in,
    }

    run_dir = root / f"alpha={_fmt_alpha(alpha)}_seed={seed}"
    run_dir.mkdir(parents=True, exist_ok=True)
    save_chain(chain, run_dir / "chain.csv")
    (run_dir / "diagnostics.json").write_text(json.dumps({**record, "meta": meta}, indent=2, sort_keys=True) + "\n")
    ref = limiting_normal(record["posterior_mean"], truth, m.T, m.n)
    (run_dir / "histogram.svg").write_text(
        histogram_svg(chain.kept, ref.pdf, float(truth.theta0), title=f"alpha = {_fmt_alpha(alpha)}, seed = {seed}")
    )
    (run_dir / "trace.svg").write_text(
        trace_svg(chain.samples, chain.burn_in, title=f"alpha = {_fmt_alpha(alpha)}, seed = {seed}")
    )
    log.info("alpha=%s seed=%d mean=%.6g ks=%.3f tv=%.3f", alpha, seed, record["posterior_mean"], record["ks"], record["tv"])
    return record


def _job(args):
    return _run_one(*args)


def run_experiment(config: ExperimentConfig, out=None) -> list[dict]:
    """Run every (alpha, seed) pair and write per-run artifacts plus ``summary.csv``.

    Returns the diagnostics records in (alpha, seed) order.
    """
    root = resolve_out(config, out)
    root.mkdir(parents=True, exist_ok=True)
    truth = build_truth(config)
    runs = config.runs()

    datasets = {}
    for _, seed in runs:
        dseed = config.data.seed if config.data.shared else seed
        if dseed not in datasets:
            datasets[dseed] = _dataset(config, truth, dseed, root)

    jobs = []
    for alpha, seed in runs:
        dseed = config.data.seed if config.data.shared else seed
        jobs.append((config, truth, datasets[dseed], alpha, seed, root))

    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(_job, jobs))
    else:
        records = [_job(j) for j in jobs]

    with open(root / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_FIELDS)
        for rec in records:
            w.writerow([_cell(rec[k]) for k in SUMMARY_FIELDS])
    return records


def _cell(v):
    if isinstance(v, float):
        return format(v, ".17g") if math.isfinite(v) else str(v)
    return v
