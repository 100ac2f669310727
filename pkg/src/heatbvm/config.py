"""Experiment configuration: TOML text with ``[truth]``, ``[model]``, ``[prior]``,
``[mcmc]``, ``[data]`` and ``[experiment]`` tables.

Validation reports every problem at once, each prefixed with its field path.
"""
from __future__ import annotations

import copy
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Any, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .prior import F0_FAMILIES

PRESETS = ("fig1", "fig2", "fig3")


class ConfigError(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("invalid configuration:\n" + "\n".join(f"  - {e}" for e in self.errors))


@dataclass(frozen=True)
class TruthBlock:
    theta0: float
    f0: str = "inverse_square"
    beta: float = 1.5


@dataclass(frozen=True)
class ModelBlock:
    T: float = 1.0
    n: float = 1e5
    m: int = 100
    theta_lo: float = 0.001
    theta_hi: float = 0.1


@dataclass(frozen=True)
class McmcBlock:
    iterations: int = 100_000
    burn_in: int = 1000
    proposal_sd: Union[float, str] = "auto"
    init: Union[float, str] = "mode"


@dataclass(frozen=True)
class DataBlock:
    shared: bool = False
    seed: int = 0
    noise_scale: float = 1.0


@dataclass(frozen=True)
class ExperimentConfig:
    truth: TruthBlock
    model: ModelBlock
    alphas: tuple[float, ...]
    mcmc: McmcBlock
    data: DataBlock
    seeds: tuple[int, ...]
    pairing: str = "product"
    out: str = "runs"
    workers: int = 1

    def runs(self) -> list[tuple[float, int]]:
        """``(alpha, seed)`` pairs in lexicographic order."""
        if self.pairing == "zip":
            pairs = list(zip(self.alphas, self.seeds))
        else:
            pairs = [(a, s) for a in self.alphas for s in self.seeds]
        return sorted(pairs)


_SCHEMA: dict[str, dict[str, tuple]] = {
    "truth": {"theta0": (float,), "f0": (str,), "beta": (float,)},
    "model": {"T": (float,), "n": (float,), "m": (int,), "theta_lo": (float,), "theta_hi": (float,)},
    "prior": {"alphas": (list,)},
    "mcmc": {"iterations": (int,), "burn_in": (int,), "proposal_sd": (float, str), "init": (float, str)},
    "data": {"shared": (bool,), "seed": (int,), "noise_scale": (float,)},
    "experiment": {"seeds": (list,), "pairing": (str,), "out": (str,), "workers": (int,)},
}
_REQUIRED = {("truth", "theta0"), ("prior", "alphas"), ("experiment", "seeds")}


def _type_ok(value: Any, types: tuple) -> bool:
    for t in types:
        if t is float and isinstance(value, (int, float)) and not isinstance(value, bool):
            return True
        if t is int and isinstance(value, int) and not isinstance(value, bool):
            return True
        if t not in (int, float) and isinstance(value, t):
            return True
    return False


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError([f"unknown preset {name!r}; choose from {', '.join(PRESETS)}"])
    return resources.files("heatbvm.presets").joinpath(f"{name}.toml").read_text()


def parse_toml(text: str) -> dict:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([f"syntax: {exc}"]) from None


def merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, val in override.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = merge(out[key], val)
        else:
            out[key] = copy.deepcopy(val)
    return out


def validate_config(raw: Union[str, dict]) -> ExperimentConfig:
    """Parse and validate configuration text (or an already-parsed table).

    Raises :class:`ConfigError` listing every violation found.
    """
    doc = parse_toml(raw) if isinstance(raw, str) else raw
    errors: list[str] = []

    for block in doc:
        if block not in _SCHEMA:
            errors.append(f"{block}: unknown block")
    for block, fields in _SCHEMA.items():
        table = doc.get(block, {})
        if not isinstance(table, dict):
            errors.append(f"{block}: must be a table")
            continue
        for key, val in table.items():
            if key not in fields:
                errors.append(f"{block}.{key}: unknown field")
            elif not _type_ok(val, fields[key]):
                names = " or ".join(t.__name__ for t in fields[key])
                errors.append(f"{block}.{key}: expected {names}, got {type(val).__name__}")
    for block, key in sorted(_REQUIRED):
        table = doc.get(block, {})
        if isinstance(table, dict) and key not in table:
            errors.append(f"{block}.{key}: required")
    if errors:
        raise ConfigError(errors)

    def get(block, cls, **casts):
        table = dict(doc.get(block, {}))
        for key, cast in casts.items():
            if key in table and isinstance(table[key], (int, float)) and not isinstance(table[key], bool):
                table[key] = cast(table[key])
        return cls(**table)

    truth = get("truth", TruthBlock, theta0=float, beta=float)
    model = get("model", ModelBlock, T=float, n=float, theta_lo=float, theta_hi=float)
    mcmc = get("mcmc", McmcBlock, proposal_sd=float, init=float)
    data = get("data", DataBlock, noise_scale=float)
    prior_tbl = doc["prior"]
    exp_tbl = doc["experiment"]
    alphas = prior_tbl["alphas"]
    seeds = exp_tbl["seeds"]

    if not alphas:
        errors.append("prior.alphas: must be nonempty")
    for i, a in enumerate(alphas):
        if not _type_ok(a, (float,)):
            errors.append(f"prior.alphas[{i}]: expected a number")
        elif not a > 0:
            errors.append(f"prior.alphas[{i}]: must be > 0 (got {a})")
    if not seeds:
        errors.append("experiment.seeds: must be nonempty")
    for i, s in enumerate(seeds):
        if not _type_ok(s, (int,)) or s < 0:
            errors.append(f"experiment.seeds[{i}]: expected a nonnegative integer")
    if len(set(map(str, seeds))) != len(seeds):
        errors.append("experiment.seeds: seeds must be distinct")
    pairing = exp_tbl.get("pairing", "product")
    if pairing not in ("product", "zip"):
        errors.append("experiment.pairing: must be 'product' or 'zip'")
    elif pairing == "zip" and len(alphas) != len(seeds):
        errors.append("experiment.pairing: 'zip' needs as many seeds as alphas")
    if exp_tbl.get("workers", 1) < 1:
        errors.append("experiment.workers: must be >= 1")

    if truth.f0 not in F0_FAMILIES:
        errors.append(f"truth.f0: unknown family {truth.f0!r} (known: {', '.join(F0_FAMILIES)})")
    if not truth.beta > 0:
        errors.append("truth.beta: must be > 0")
    if not model.T > 0:
        errors.append("model.T: must be > 0")
    if not model.n > 0:
        errors.append("model.n: must be > 0")
    if model.m < 1:
        errors.append("model.m: must be >= 1")
    if not 0 < model.theta_lo < model.theta_hi:
        errors.append("model.theta_lo/theta_hi: need 0 < theta_lo < theta_hi")
    elif not model.theta_lo < truth.theta0 < model.theta_hi:
        errors.append(f"truth.theta0: must lie in (theta_lo, theta_hi) = ({model.theta_lo}, {model.theta_hi})")
    if mcmc.iterations < 2:
        errors.append("mcmc.iterations: must be >= 2")
    if not 0 <= mcmc.burn_in < mcmc.iterations:
        errors.append("mcmc.burn_in: must satisfy 0 <= burn_in < iterations")
    elif mcmc.iterations - mcmc.burn_in < 1000:
        errors.append("mcmc.iterations: need at least 1000 post-burn-in samples for diagnostics")
    if isinstance(mcmc.proposal_sd, str):
        if mcmc.proposal_sd != "auto":
            errors.append("mcmc.proposal_sd: must be a positive number or 'auto'")
    elif not mcmc.proposal_sd > 0:
        errors.append("mcmc.proposal_sd: must be > 0")
    if isinstance(mcmc.init, str):
        if mcmc.init != "mode":
            errors.append("mcmc.init: must be a number or 'mode'")
    elif not model.theta_lo < mcmc.init < model.theta_hi:
        errors.append("mcmc.init: must lie strictly inside (theta_lo, theta_hi)")
    if data.noise_scale < 0:
        errors.append("data.noise_scale: must be >= 0")
    if data.seed < 0:
        errors.append("data.seed: must be nonnegative")

    if errors:
        raise ConfigError(errors)
    return ExperimentConfig(
        truth=truth,
        model=model,
        alphas=tuple(float(a) for a in alphas),
        mcmc=mcmc,
        data=data,
        seeds=tuple(int(s) for s in seeds),
        pairing=pairing,
        out=exp_tbl.get("out", "runs"),
        workers=exp_tbl.get("workers", 1),
    )
