import json
import math
import subprocess
import sys

import numpy as np
import pytest

from paramsqueeze.cli import main

EXAMPLE1 = """
[profile]
variant = "piecewise_linear"
omega_i = 3.0
omega_f = 8.0
t_a = 10.0
t_b = 20.0
"""

EXAMPLE4 = f"""
[profile]
variant = "sine_squared"
omega_i = 1.0
omega_f = 100.0
t_a = {1.5 * math.pi!r}
t_b = {1.5 * math.pi + 0.05!r}
n = 1
"""

RESONANT = """
[profile]
variant = "sine_squared"
omega_i = 3.0
omega_f = 8.0
t_a = 10.0
t_b = 15.0
n = 11
"""


@pytest.fixture
def cfg(tmp_path):
    def write(text, name="run.toml"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_profile_values(cfg, capsys):
    assert main(["--config", cfg(EXAMPLE1), "profile", "--at", "10", "--at", "15"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert [float(line.split()[1]) for line in lines[1:]] == pytest.approx([9.0, 36.5])


def test_profile_rejects_negative_time(cfg):
    assert main(["--config", cfg(EXAMPLE1), "profile", "--at", "-1"]) == 2


def test_squeeze_json(cfg, capsys):
    assert main(["--config", cfg(EXAMPLE4), "squeeze"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["cosh2eta"] == pytest.approx(25.62206, rel=1e-3)
    assert report["constancy_residual"] < 1e-8
    assert report["phase_undefined"] is False
    assert math.hypot(report["A"], report["B"]) == pytest.approx(2 * report["sinh2eta"], rel=1e-9)


def test_sweep_writes_csv_and_sidecar(cfg, tmp_path, capsys):
    out = tmp_path / "o"
    assert main(["--config", cfg(EXAMPLE1), "--out", str(out), "sweep", "--axis", "tb",
                 "--range", "10.5", "19.5", "--samples", "4"]) == 0
    data = np.genfromtxt(out / "sweep_tb.csv", delimiter=",", names=True, dtype=None, encoding=None)
    assert len(data) == 4
    meta = json.loads((out / "sweep_tb.csv.json").read_text())
    assert meta["sweep"]["axis"] == "tb" and meta["config"]["profile"]["omega_f"] == 8.0


def test_sweep_samples_validated(cfg, tmp_path):
    assert main(["--config", cfg(EXAMPLE1), "--out", str(tmp_path), "sweep", "--axis", "tb",
                 "--range", "10.5", "19.5", "--samples", "1"]) == 2


def test_stability_grid_and_overlay(cfg, tmp_path):
    out = tmp_path / "s"
    assert main(["--config", cfg(RESONANT), "--out", str(out), "stability", "--res", "11",
                 "--tb-samples", "5"]) == 0
    grid = np.genfromtxt(out / "stability_grid.csv", delimiter=",", names=True, dtype=None, encoding=None)
    q0 = grid[grid["q"] == 0]
    for a in (1.0, 4.0, 9.0):
        assert abs(q0["trace"][q0["a"] == a][0]) == pytest.approx(2.0, abs=1e-6)
    curve = np.genfromtxt(out / "stability_curve.csv", delimiter=",", names=True)
    assert len(curve) == 5


def test_stability_resolution_validated(tmp_path):
    assert main(["--out", str(tmp_path), "stability", "--res", "1"]) == 2


def test_observables_rows(cfg, tmp_path):
    text = "[bath]\neta = 1.0\n"
    out = tmp_path / "ob"
    assert main(["--config", cfg(text), "--out", str(out), "observables", "--r", "10",
                 "--t-range", "15", "20", "--samples", "2"]) == 0
    data = np.genfromtxt(out / "observables.csv", delimiter=",", names=True)
    assert np.allclose(data["tr_st_rr"] + data["tr_st_hr"], 0.0, atol=1e-10)


def test_observables_need_retarded_time(tmp_path):
    assert main(["--out", str(tmp_path), "observables", "--r", "10", "--t-range", "5", "20", "--samples", "2"]) == 2


def test_config_errors_exit_two(cfg, capsys):
    assert main(["--config", cfg("[profile]\nvariant = 'constant'\nomega_i = 1\nbogus = 1\n"), "profile",
                 "--at", "1"]) == 2
    assert "bogus" in capsys.readouterr().err


def test_seedless_takes_no_value():
    assert main(["--seedless=1", "profile", "--at", "1"]) == 2


def test_missing_profile_section(tmp_path):
    assert main(["--out", str(tmp_path), "squeeze"]) == 2


def test_numerical_failure_exit_three(cfg):
    text = RESONANT + "\n[solver]\nrel_tol = 1e-3\nabs_tol = 1e-3\nwronskian_alarm = 1e-14\n"
    assert main(["--config", cfg(text), "squeeze"]) == 3


def test_module_entry_point_help():
    proc = subprocess.run([sys.executable, "-m", "paramsqueeze", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "hbar = c = 1" in proc.stdout
    for sub in ("profile", "squeeze", "sweep", "stability", "observables", "selftest"):
        assert sub in proc.stdout
