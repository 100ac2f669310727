"""Command line: ``heatbvm run | validate | diag``.

Exit status is 0 on success, 1 for invalid configuration or arguments, 2 for
failures while running.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import data as data_mod
from .config import PRESETS, ConfigError, merge, parse_toml, preset_text, validate_config
from .diagnostics import diagnostics_record
from .experiment import run_experiment
from .sampler import load_chain

EXIT_OK, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2


def _load_config(args):
    doc = {}
    if args.preset:
        doc = parse_toml(preset_text(args.preset))
    if args.config:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ConfigError([f"config: cannot read {args.config}: {exc.strerror}"]) from None
        doc = merge(doc, parse_toml(text))
    if not doc:
        raise ConfigError(["need --config and/or --preset"])
    if getattr(args, "seeds", None):
        try:
            seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
        except ValueError:
            raise ConfigError([f"--seeds: expected comma-separated integers, got {args.seeds!r}"]) from None
        doc = merge(doc, {"experiment": {"seeds": seeds}})
    return validate_config(doc)


def cmd_run(args) -> int:
    config = _load_config(args)
    records = run_experiment(config, out=args.out)
    for rec in records:
        print(json.dumps(rec, sort_keys=True))
    return EXIT_OK


def cmd_validate(args) -> int:
    config = _load_config(args)
    print(f"ok: {len(config.runs())} run(s), alphas={list(config.alphas)}, seeds={list(config.seeds)}")
    return EXIT_OK


def cmd_diag(args) -> int:
    try:
        meta = json.loads(Path(args.truth).read_text())
        truth = data_mod.truth_from_meta(meta)
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError([f"--truth: {exc}"]) from None
    chain = load_chain(args.chain, burn_in=args.burn_in)
    rec = diagnostics_record(chain, truth, meta["T"], meta["n"], alpha=args.alpha, seed=meta.get("seed"))
    print(json.dumps(rec, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heatbvm", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment")
    run.add_argument("--config", type=str)
    run.add_argument("--preset", choices=PRESETS)
    run.add_argument("--out", type=str, help="output root (overrides $HEATBVM_OUT and the config)")
    run.add_argument("--seeds", type=str, help="comma-separated seeds, replacing the configured ones")
    run.set_defaults(func=cmd_run)

    val = sub.add_parser("validate", help="check a configuration file")
    val.add_argument("--config", type=str)
    val.add_argument("--preset", choices=PRESETS)
    val.set_defaults(func=cmd_validate)

    diag = sub.add_parser("diag", help="diagnostics for an existing chain CSV")
    diag.add_argument("--chain", required=True)
    diag.add_argument("--truth", required=True, help="observations JSON sidecar")
    diag.add_argument("--burn-in", type=int, default=1000)
    diag.add_argument("--alpha", type=float, default=None)
    diag.set_defaults(func=cmd_diag)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
