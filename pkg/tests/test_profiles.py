import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from paramsqueeze.profiles import (
    ParametricProfile,
    ProfileError,
    Variant,
    eval_omega_sq,
    septic_smoothstep,
    smoothness_report,
)

omegas = st.floats(0.5, 20.0)


def test_piecewise_linear_endpoint_and_midpoint():
    p = ParametricProfile.piecewise_linear(3, 8, 10, 20)
    assert eval_omega_sq(p, 10.0) == pytest.approx(9.0)
    assert eval_omega_sq(p, 15.0) == pytest.approx(36.5)
    assert eval_omega_sq(p, 25.0) == pytest.approx(64.0)
    assert eval_omega_sq(p, 0.0) == pytest.approx(9.0)


def test_sine_squared_midpoint():
    p = ParametricProfile.sine_squared(3, 8, 10, 20, n=1)
    assert eval_omega_sq(p, 15.0) == pytest.approx(36.5)


def test_septic_endpoints():
    p = ParametricProfile.smooth_septic(2, 10, 3, 4)
    assert eval_omega_sq(p, 3.0) == pytest.approx(4.0)
    assert eval_omega_sq(p, 4.0) == pytest.approx(100.0)


def test_printed_septic_bracket_is_the_smoothstep():
    # The printed closed form in t, t_a, t_b is the normalized smoothstep of
    # x = (t - t_a) / (t_b - t_a); our implementation uses the latter.
    t, ta, tb, x = sp.symbols("t t_a t_b x", real=True)
    printed = -(t - ta) ** 4 / (tb - ta) ** 7 * (
        20 * t**3 - 10 * (7 * tb - ta) * t**2 + 4 * (21 * tb**2 - 7 * tb * ta + ta**2) * t
        - (35 * tb**3 - 21 * tb**2 * ta + 7 * tb * ta**2 - ta**3)
    )
    smooth = 35 * x**4 - 84 * x**5 + 70 * x**6 - 20 * x**7
    assert sp.simplify(printed - smooth.subs(x, (t - ta) / (tb - ta))) == 0
    for xv in np.linspace(0, 1, 11):
        assert septic_smoothstep(xv) == pytest.approx(float(smooth.subs(x, xv)), abs=1e-13)


def test_vectorized_matches_scalar():
    p = ParametricProfile.sine_squared(1, 4, 2, 5, n=3)
    ts = np.linspace(0, 8, 50)
    vec = eval_omega_sq(p, ts)
    assert vec.shape == ts.shape
    assert np.allclose(vec, [eval_omega_sq(p, t) for t in ts], rtol=0, atol=0)


@pytest.mark.parametrize(
    "build",
    [
        lambda: ParametricProfile.piecewise_linear(1, 2, 5, 5),
        lambda: ParametricProfile.piecewise_linear(1, 2, 5, 4),
        lambda: ParametricProfile.sine_squared(1, 2, 0, 1, n=2),
        lambda: ParametricProfile.sine_squared(1, 2, 0, 1, n=0),
        lambda: ParametricProfile.piecewise_linear(-1, 2, 0, 1),
        lambda: ParametricProfile.piecewise_linear(1, 2, 0, 1, shift=-0.5),
        lambda: ParametricProfile.custom([0, 1, 2], [1.0, 2.0]),
        lambda: ParametricProfile.custom([0, 2, 1], [1.0, 2.0, 3.0]),
    ],
)
def test_invalid_profiles_rejected(build):
    with pytest.raises(ProfileError):
        build()


def test_smoothness_orders():
    assert smoothness_report(ParametricProfile.piecewise_linear(3, 8, 10, 20)) == {
        "continuity_order_at_ta": 0, "continuity_order_at_tb": 0}
    sept = smoothness_report(ParametricProfile.smooth_septic(2, 10, 3, 4))
    assert sept["continuity_order_at_ta"] >= 3 and sept["continuity_order_at_tb"] >= 3
    sine = smoothness_report(ParametricProfile.sine_squared(3, 8, 10, 20, 1))
    assert sine == {"continuity_order_at_ta": 1, "continuity_order_at_tb": 1}
    const = smoothness_report(ParametricProfile.constant(2.0))
    assert const["continuity_order_at_ta"] == math.inf


def _count_touches(values, level, tol):
    near = np.abs(values - level) < tol
    # number of separate runs of samples that touch the level
    return int(np.sum(near[1:] & ~near[:-1]) + near[0])


@pytest.mark.parametrize("n", [1, 3, 5, 11])
def test_sine_squared_extrema_count(n):
    p = ParametricProfile.sine_squared(3, 8, 0, 1, n=n)
    t = np.linspace(0, 1, 200_001)
    w2 = eval_omega_sq(p, t)
    tol = 1e-6 * 55
    # omega_i^2 at x = 2k/n and omega_f^2 at x = (2k+1)/n inside [0, 1]
    assert _count_touches(w2, 9.0, tol) == n // 2 + 1
    assert _count_touches(w2, 64.0, tol) == (n + 1) // 2


def test_n1_sine_squared_monotone():
    p = ParametricProfile.sine_squared(3, 8, 0, 1, n=1)
    assert np.all(np.diff(eval_omega_sq(p, np.linspace(0, 1, 1001))) >= 0)


@given(omegas, omegas, st.floats(0, 10), st.floats(0.01, 20),
       st.sampled_from([Variant.PIECEWISE_LINEAR, Variant.SINE_SQUARED, Variant.SMOOTH_SEPTIC]),
       st.sampled_from([1, 3, 7]))
def test_values_bounded_by_endpoints(wi, wf, ta, dur, variant, n):
    p = ParametricProfile(variant, wi, wf, ta, ta + dur, n=n)
    vals = eval_omega_sq(p, np.linspace(0, ta + 2 * dur, 301))
    lo, hi = sorted((wi * wi, wf * wf))
    assert np.all(vals >= lo * (1 - 1e-12)) and np.all(vals <= hi * (1 + 1e-12))


@given(omegas, omegas, st.floats(0, 5), st.floats(0.1, 5), st.floats(0, 10), st.floats(0, 1))
def test_shift_translates_profile(wi, wf, ta, dur, delta, u):
    p = ParametricProfile.piecewise_linear(wi, wf, ta, ta + dur)
    t = u * (ta + 2 * dur)
    assert eval_omega_sq(p.with_shift(delta), t + delta) == pytest.approx(eval_omega_sq(p, t), rel=1e-12)


def test_custom_table_file(tmp_path):
    t = np.linspace(1.0, 2.0, 9)
    w2 = 4.0 + 5.0 * septic_smoothstep((t - 1.0))
    path = tmp_path / "table.csv"
    np.savetxt(path, np.column_stack([t, w2]), delimiter=",")
    p = ParametricProfile.from_table_file(path)
    assert p.variant is Variant.CUSTOM
    assert (p.omega_i, p.omega_f, p.t_a, p.t_b) == pytest.approx((2.0, 3.0, 1.0, 2.0))
    assert eval_omega_sq(p, t[4]) == pytest.approx(w2[4])
    assert eval_omega_sq(p, 0.5) == pytest.approx(4.0)
    assert eval_omega_sq(p, 3.0) == pytest.approx(9.0)
