import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from paramsqueeze.mode_evolution import (
    FundamentalSolution,
    SolverConfig,
    WronskianDrift,
    continue_out_region,
    evolve,
    in_region,
    solution_at_end,
    trajectory,
    write_trajectory_csv,
)
from paramsqueeze.profiles import ParametricProfile


@given(st.floats(0.1, 50), st.floats(0, 100))
def test_in_region_closed_form(w, t):
    s = in_region(w, t)
    assert s.d1 == pytest.approx(math.cos(w * t), abs=1e-12)
    assert s.d2 == pytest.approx(math.sin(w * t) / w, abs=1e-12)
    assert s.wronskian == pytest.approx(1.0, abs=1e-12)


@given(st.floats(0.1, 30), st.floats(0, 50), st.floats(0, 50))
def test_out_region_rotation_composes(w, a, b):
    seed = FundamentalSolution(0.0, 0.3, -1.2, 0.7, 0.5)
    two_step = continue_out_region(continue_out_region(seed, w, a), w, a + b)
    one_step = continue_out_region(seed, w, a + b)
    assert np.allclose(two_step.as_array(), one_step.as_array(), atol=1e-9)


def test_constant_profile_over_a_thousand_periods():
    w = 2.0
    t = 1000 * 2 * math.pi / w
    got = evolve(ParametricProfile.constant(w), t)
    assert np.allclose(got.as_array(), [math.cos(w * t), -w * math.sin(w * t), math.sin(w * t) / w, math.cos(w * t)],
                       rtol=1e-10, atol=1e-10)


def test_integrator_over_a_thousand_constant_periods():
    # A "transition" between equal frequencies forces the stepper through
    # 10^3 periods.  Global error grows linearly with the window, so the
    # default tolerances are tightened here; with the defaults |W - 1|
    # reaches about 1e-8 over this span.
    w = 2.0
    duration = 1000 * 2 * math.pi / w
    prof = ParametricProfile.piecewise_linear(w, w, 0.0, duration)
    cfg = SolverConfig(rel_tol=1e-12, abs_tol=1e-14)
    end = solution_at_end(prof, cfg)
    exact = in_region(w, duration)
    assert np.allclose(end.as_array(), exact.as_array(), atol=1e-8)
    assert abs(end.wronskian - 1.0) < 1e-9


@pytest.mark.parametrize("prof", [
    ParametricProfile.piecewise_linear(3, 8, 10, 20),
    ParametricProfile.sine_squared(3, 8, 10, 15, n=11),
    ParametricProfile.smooth_septic(2, 10, 3, 4),
])
def test_analytic_continuation_matches_integration(prof):
    t = prof.end + 7.3
    a = evolve(prof, t, out_region="analytic")
    b = evolve(prof, t, out_region="integrate")
    assert np.allclose(a.as_array(), b.as_array(), rtol=1e-8, atol=1e-8)


def test_trajectory_agrees_with_evolve():
    prof = ParametricProfile.sine_squared(1, 4, 2, 6, n=3)
    times = [0.5, 2.0, 3.1, 4.4, 6.0, 9.5]
    traj = trajectory(prof, times)
    for t, s in zip(times, traj):
        assert np.allclose(s.as_array(), evolve(prof, t).as_array(), rtol=1e-8, atol=1e-9)


def test_sudden_jump_keeps_mode_continuous():
    dur = 1e-7
    prof = ParametricProfile.piecewise_linear(1.0, 100.0, 1.0, 1.0 + dur)
    end = solution_at_end(prof)
    start = in_region(1.0, 1.0)
    # positions move by O(dur); velocities by at most max(omega^2) * dur
    assert np.allclose(end.as_array()[[0, 2]], start.as_array()[[0, 2]], atol=2 * dur)
    assert np.allclose(end.as_array()[[1, 3]], start.as_array()[[1, 3]], atol=1e4 * dur)


def test_wronskian_alarm_fires():
    prof = ParametricProfile.sine_squared(1, 20, 0, 50, n=11)
    cfg = SolverConfig(rel_tol=1e-3, abs_tol=1e-3, wronskian_alarm=1e-12)
    with pytest.raises(WronskianDrift):
        solution_at_end(prof, cfg)


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        evolve(ParametricProfile.constant(1.0), -1.0)


def test_trajectory_csv(tmp_path):
    prof = ParametricProfile.piecewise_linear(1, 2, 1, 2)
    path = tmp_path / "traj.csv"
    write_trajectory_csv(path, trajectory(prof, np.linspace(0, 3, 7)))
    data = np.genfromtxt(path, delimiter=",", names=True)
    assert len(data) == 7
    assert np.allclose(data["W"], 1.0, atol=1e-9)


def test_linear_ramp_wronskian_at_end():
    prof = ParametricProfile.piecewise_linear(3, 8, 10, 20)
    assert abs(evolve(prof, 20.0).wronskian - 1.0) <= 1e-9
