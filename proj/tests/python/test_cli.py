import json
import os
import subprocess

import pytest

BIN = os.environ.get("YMLAB_BIN", "build/ymlab")


def ymlab(*args, cwd=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, cwd=cwd)


def test_usage_errors():
    assert ymlab().returncode == 2  # missing subcommand
    assert ymlab("evolve").returncode == 2  # missing config
    assert ymlab("frobnicate").returncode == 2
    assert ymlab("--help").returncode == 0


def test_malformed_config_exits_2_and_writes_nothing(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("mass = 1\nbogus.key = 3\n")
    out = tmp_path / "out"
    r = ymlab("evolve", str(cfg), "--output", str(out))
    assert r.returncode == 2
    assert "bogus.key" in r.stderr
    assert not out.exists()


def test_stationary_json(tmp_path):
    r = ymlab("stationary", "--n", "1", "--output", str(tmp_path))
    assert r.returncode == 0
    j = json.loads((tmp_path / "stationary_1.json").read_text())
    assert abs(j["a_n"] - (2.0 - 3.0**0.5)) < 1e-6
    assert j["zero_count"] == 1
    assert (tmp_path / "stationary_1.dat").exists()


def test_stationary_bad_bracket_exits_3(tmp_path):
    r = ymlab("stationary", "--n", "1", "--bracket", "0.5", "0.9", "--output", str(tmp_path))
    assert r.returncode == 3


def test_verify_bad_params_exit_1(tmp_path):
    # a tiny plateau with a huge delta fails the lemma scans (checked failure)
    r = ymlab("verify", "--params", "2.0", "0.45", "0.05", "--output", str(tmp_path))
    assert r.returncode == 1
    reports = json.loads((tmp_path / "verify_report.json").read_text())
    assert any(rep["id"].startswith("g_positivity") for rep in reports)
    assert any(not rep["pass"] for rep in reports)


def test_decay_missing_dir_exits_2(tmp_path):
    r = ymlab("decay", "--input", str(tmp_path / "nope"))
    assert r.returncode == 2


def test_vacuum_run_pipeline(tmp_path):
    cfg = tmp_path / "vac.cfg"
    cfg.write_text(
        "mass = 1\n"
        "grid.x_min = -50\n"
        "grid.x_max = 50\n"
        "grid.n = 501\n"
        "initial.kind = vacuum\n"
        "evolve.t_end = 10\n"
        "evolve.stride = 10\n"
        f"output.dir = {tmp_path / 'run'}\n"
    )
    r = ymlab("evolve", str(cfg))
    assert r.returncode == 0
    summary = json.loads((tmp_path / "run" / "summary.json").read_text())
    assert summary["energy_drift"] == 0.0
    assert summary["energies"]["scalar_total"] == 0.0

    d = ymlab("decay", "--input", str(tmp_path / "run"))
    assert d.returncode == 0
    report = json.loads((tmp_path / "run" / "decay_report.json").read_text())
    assert report["all_pass"]
