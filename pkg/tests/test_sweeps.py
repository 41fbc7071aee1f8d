import json
import math

import numpy as np
import pytest

from paramsqueeze.errors import ConfigError
from paramsqueeze.profiles import ParametricProfile
from paramsqueeze.squeeze import squeeze_of_profile
from paramsqueeze.sweeps import (
    SWEEP_COLUMNS,
    SweepSpec,
    cycle_averages,
    local_maxima,
    run_sweep,
    spectral_sweep,
    write_table,
)

PL = ParametricProfile.piecewise_linear(3, 8, 10, 20)
SINE11 = ParametricProfile.sine_squared(3, 8, 10, 15, n=11)


@pytest.mark.parametrize("axis,rng,t_obs", [
    ("tb", (9.0, 12.0), 30.0),      # t_b below t_a
    ("tb", (11.0, 35.0), 30.0),     # t_b after the observation
    ("shift", (-1.0, 2.0), 40.0),
    ("shift", (0.0, 30.0), 40.0),
    ("omega", (0.0, 2.0), 40.0),
    ("bogus", (1.0, 2.0), 40.0),
    ("tb", (14.0, 12.0), 40.0),
])
def test_spec_validation(axis, rng, t_obs):
    with pytest.raises(ConfigError):
        SweepSpec(PL, axis, rng, 5, t_obs)


def test_samples_validated():
    with pytest.raises(ConfigError):
        SweepSpec(PL, "tb", (11, 12), 1, 30.0)


def test_tb_sweep_matches_direct_evaluation():
    spec = SweepSpec(PL, "tb", (11.0, 19.0), 5, 20.0)
    rows = run_sweep(spec)
    assert [r["axis_value"] for r in rows] == pytest.approx([11, 13, 15, 17, 19])
    for row in rows:
        direct = squeeze_of_profile(ParametricProfile.piecewise_linear(3, 8, 10, row["axis_value"]), 20.0)
        assert row["eta"] == pytest.approx(direct.eta, rel=1e-12)
        assert row["error"] == ""
        assert math.isnan(row["trace"])


def test_shift_sweep_is_flat():
    rows = run_sweep(SweepSpec(PL, "shift", (0.0, 7.0), 6, 40.0))
    etas = np.array([r["eta"] for r in rows])
    assert np.ptp(etas) <= 1e-7 * etas.mean()


def test_sine_squared_rows_carry_mathieu_data():
    rows = run_sweep(SweepSpec(SINE11, "tb", (12.0, 15.0), 4, 20.0))
    for r in rows:
        assert np.isfinite([r["a"], r["q"], r["trace"]]).all()
        assert r["q"] <= r["a"] / 2


def test_parallel_sweep_is_identical():
    spec = SweepSpec(SINE11, "tb", (11.0, 15.0), 6, 20.0)
    assert run_sweep(spec, workers=2) == run_sweep(spec, workers=1)


def test_failures_recorded_per_row():
    t = np.linspace(1, 2, 5)
    custom = ParametricProfile.custom(t, np.linspace(1, 4, 5))
    rows = run_sweep(SweepSpec(custom, "tb", (1.5, 1.8), 2, 3.0))
    assert all(r["error"].startswith("ConfigError") for r in rows)
    assert all(math.isnan(r["eta"]) for r in rows)


def test_omega_axis_scales_both_frequencies():
    spec = SweepSpec(PL, "omega", (1.5, 6.0), 4, 20.0)
    prof = spec.profile_at(6.0)
    assert (prof.omega_i, prof.omega_f) == pytest.approx((6.0, 16.0))
    rows = spectral_sweep(PL, (1.5, 6.0), 4)
    assert rows[-1]["eta"] == pytest.approx(run_sweep(spec)[-1]["eta"], rel=1e-10)


def test_cycle_averages_of_decaying_oscillation():
    x = np.linspace(0, 20, 2001)
    y = np.exp(-0.1 * x) * (2 + np.cos(3 * x))
    centers, means = cycle_averages(x, y)
    assert len(means) >= 5
    assert np.all(np.diff(means) < 0)
    assert np.all(np.diff(centers) > 0)


def test_local_maxima():
    assert local_maxima([0, 2, 1, 3, 3, 1, 5, 0]) == [1, 6]


def test_write_table_and_sidecar(tmp_path):
    rows = run_sweep(SweepSpec(PL, "tb", (11.0, 12.0), 2, 20.0))
    path = write_table(tmp_path / "sweep.csv", rows, SWEEP_COLUMNS, {"note": "x", "value": np.float64(1.5)})
    data = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding=None)
    assert len(data) == 2
    meta = json.loads((tmp_path / "sweep.csv.json").read_text())
    assert meta["note"] == "x" and meta["value"] == 1.5
    assert "code_version" in meta
