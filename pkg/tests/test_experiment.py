import csv
import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from heatbvm.cli import main
from heatbvm.config import validate_config
from heatbvm.experiment import OUT_ENV, find_mode, run_experiment
from heatbvm.posterior import PosteriorTarget
from heatbvm.prior import SeriesPrior, TruthSpec, ground_truth_f0
from heatbvm.data import generate
from heatbvm.spectral import Diffusivity

SMALL = """
[truth]
theta0 = 0.01
beta = 1.5
[model]
n = 1e4
m = 30
[prior]
alphas = [1.0, 2.6]
[mcmc]
iterations = 3000
burn_in = 500
[data]
shared = {shared}
seed = 4
[experiment]
seeds = [8, 3]
"""


def small(shared=False):
    return SMALL.format(shared=str(shared).lower())


@pytest.fixture
def cfg_file(tmp_path):
    p = tmp_path / "small.toml"
    p.write_text(small())
    return p


def artifacts(root):
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_run_writes_everything(tmp_path):
    records = run_experiment(validate_config(small()), out=tmp_path / "out")
    root = tmp_path / "out"
    assert [(r["alpha"], r["seed"]) for r in records] == [(1.0, 3), (1.0, 8), (2.6, 3), (2.6, 8)]
    for name in ("alpha=1_seed=3", "alpha=2.6_seed=8"):
        d = root / name
        for f in ("chain.csv", "diagnostics.json", "histogram.svg", "trace.svg"):
            assert (d / f).is_file()
        rec = json.loads((d / "diagnostics.json").read_text())
        assert rec["meta"]["theta_lo"] == 0.001 and rec["meta"]["theta_hi"] == 0.1
        with open(d / "chain.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["t", "theta", "accepted_flag"] and len(rows) == 3001
    assert sorted(p.name for p in (root / "data").iterdir()) == ["seed=3", "seed=8"]
    with open(root / "summary.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [(float(r["alpha"]), int(r["seed"])) for r in rows] == [(1.0, 3), (1.0, 8), (2.6, 3), (2.6, 8)]


def test_shared_dataset(tmp_path):
    records = run_experiment(validate_config(small(shared=True)), out=tmp_path)
    assert {r["data_seed"] for r in records} == {4}
    assert [p.name for p in (tmp_path / "data").iterdir()] == ["seed=4"]


def test_byte_identical_rerun_and_parallel(tmp_path):
    cfg = validate_config(small())
    run_experiment(cfg, out=tmp_path / "a")
    run_experiment(cfg, out=tmp_path / "b")
    par = validate_config(small().replace("seeds = [8, 3]", "seeds = [8, 3]\nworkers = 2"))
    run_experiment(par, out=tmp_path / "c")
    a, b, c = (artifacts(tmp_path / x) for x in "abc")
    assert a == b
    assert a == c


def test_svgs_are_valid(tmp_path):
    run_experiment(validate_config(small()), out=tmp_path)
    hist = ET.parse(tmp_path / "alpha=1_seed=3" / "histogram.svg").getroot()
    ns = "{http://www.w3.org/2000/svg}"
    lines = hist.findall(f"{ns}line")
    assert any(line.get("stroke") == "red" for line in lines)
    curve = hist.findall(f"{ns}polyline")
    assert len(curve) == 1 and len(curve[0].get("points").split()) == 512
    assert len(hist.findall(f"{ns}rect")) == 51  # background + 50 bars
    trace = ET.parse(tmp_path / "alpha=1_seed=3" / "trace.svg").getroot()
    assert any(line.get("stroke") == "blue" for line in trace.findall(f"{ns}line"))


def test_find_mode():
    truth = TruthSpec(Diffusivity(0.01), ground_truth_f0(100), 1.5)
    obs = generate(truth, 1.0, 1e5, 100, seed=1)
    tgt = PosteriorTarget(obs, SeriesPrior(1.0, 100), 1.0, 0.001, 0.1)
    mode = find_mode(tgt)
    fine = np.linspace(mode - 1e-4, mode + 1e-4, 2001)
    assert tgt(mode) >= tgt.grid(fine).max() - 1e-9
    assert abs(mode - 0.01) < 0.002


def test_env_override(tmp_path, monkeypatch, cfg_file):
    monkeypatch.setenv(OUT_ENV, str(tmp_path / "env"))
    assert main(["run", "--config", str(cfg_file)]) == 0
    assert (tmp_path / "env" / "summary.csv").is_file()
    assert main(["run", "--config", str(cfg_file), "--out", str(tmp_path / "flag")]) == 0
    assert (tmp_path / "flag" / "summary.csv").is_file()


class TestCli:
    def test_validate(self, cfg_file, capsys):
        assert main(["validate", "--config", str(cfg_file)]) == 0
        assert main(["validate", "--preset", "fig2"]) == 0
        assert "3 run(s)" in capsys.readouterr().out

    def test_validate_failure(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text(small().replace("alphas = [1.0, 2.6]", "alphas = [-1.0]"))
        assert main(["validate", "--config", str(bad)]) == 1
        assert "prior.alphas[0]" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["validate", "--config", str(tmp_path / "nope.toml")]) == 1

    def test_no_source(self):
        assert main(["validate"]) == 1

    def test_bad_arguments(self):
        assert main(["run", "--preset", "fig7"]) == 1
        assert main(["bogus"]) == 1

    def test_seed_override(self, tmp_path, cfg_file, capsys):
        assert main(["run", "--config", str(cfg_file), "--out", str(tmp_path), "--seeds", "5"]) == 0
        out = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
        assert {r["seed"] for r in out} == {5}
        assert main(["run", "--config", str(cfg_file), "--out", str(tmp_path), "--seeds", "a,b"]) == 1

    def test_preset_with_override(self, tmp_path, capsys):
        over = tmp_path / "over.toml"
        over.write_text("[model]\nn = 1e4\nm = 20\n[mcmc]\niterations = 2500\nburn_in = 200\n[experiment]\nseeds = [1]\n")
        assert main(["run", "--preset", "fig1", "--config", str(over), "--out", str(tmp_path / "o")]) == 0
        rec = json.loads((tmp_path / "o" / "alpha=1_seed=1" / "diagnostics.json").read_text())
        assert rec["meta"]["m"] == 20 and rec["meta"]["iterations"] == 2500

    def test_runtime_failure(self, tmp_path, cfg_file):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        assert main(["run", "--config", str(cfg_file), "--out", str(blocker / "sub")]) == 2

    def test_diag_matches_run(self, tmp_path, cfg_file, capsys):
        assert main(["run", "--config", str(cfg_file), "--out", str(tmp_path)]) == 0
        capsys.readouterr()
        run_dir = tmp_path / "alpha=2.6_seed=8"
        args = ["diag", "--chain", str(run_dir / "chain.csv"), "--truth", str(tmp_path / "data/seed=8/observations.json"),
                "--burn-in", "500", "--alpha", "2.6"]
        assert main(args) == 0
        got = json.loads(capsys.readouterr().out)
        stored = json.loads((run_dir / "diagnostics.json").read_text())
        for key in ("posterior_mean", "posterior_var", "ks", "tv", "abs_bias", "standardized_bias", "acceptance_rate", "ess"):
            assert got[key] == stored[key]

    def test_diag_bad_truth(self, tmp_path):
        (tmp_path / "t.json").write_text("{}")
        (tmp_path / "c.csv").write_text("t,theta,accepted_flag\n1,0.01,0\n")
        assert main(["diag", "--chain", str(tmp_path / "c.csv"), "--truth", str(tmp_path / "t.json")]) == 1
