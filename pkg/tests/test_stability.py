import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import mathieu_a, mathieu_b

from paramsqueeze.errors import ConfigError
from paramsqueeze.profiles import ParametricProfile
from paramsqueeze.stability import (
    WrongVariant,
    floquet_exponent,
    monodromy,
    monodromy_trace,
    profile_family_curve,
    stability_scan,
    to_mathieu,
)


@pytest.mark.parametrize("a", [0.25, 1.0, 2.25, 4.0, 7.3])
def test_free_oscillator_trace(a):
    assert monodromy_trace(a, 0.0) == pytest.approx(2 * math.cos(math.pi * math.sqrt(a)), abs=1e-8)


@pytest.mark.parametrize("a", [1.0, 4.0, 9.0])
def test_band_edges_on_q_zero_line(a):
    assert abs(monodromy_trace(a, 0.0)) == pytest.approx(2.0, abs=1e-8)


@given(st.floats(0, 10), st.floats(0, 5))
def test_unit_determinant_and_q_symmetry(a, q):
    m = monodromy(a, q)
    assert abs(np.linalg.det(m) - 1) <= 1e-9
    assert monodromy_trace(a, -q) == pytest.approx(np.trace(m), abs=1e-7 * max(1.0, abs(np.trace(m))))


@pytest.mark.parametrize("q", [0.5, 1.0, 2.0, 4.0])
def test_characteristic_values_from_scipy(q):
    # Even/odd Mathieu functions of order m have period pi (m even) or
    # 2 pi (m odd), i.e. trace +2 or -2 at the characteristic values.
    for m in (0, 2):
        assert monodromy_trace(mathieu_a(m, q), q) == pytest.approx(2.0, abs=1e-6)
    assert monodromy_trace(mathieu_a(1, q), q) == pytest.approx(-2.0, abs=1e-6)
    assert monodromy_trace(mathieu_b(1, q), q) == pytest.approx(-2.0, abs=1e-6)
    assert monodromy_trace(mathieu_b(2, q), q) == pytest.approx(2.0, abs=1e-6)


def test_first_tongue_is_unstable():
    q = 1.0
    mid = 0.5 * (mathieu_a(1, q) + mathieu_b(1, q))
    assert abs(monodromy_trace(mid, q)) > 2
    assert floquet_exponent(monodromy_trace(mid, q)).real > 0
    assert floquet_exponent(monodromy_trace(2.5, 0.1)).real == pytest.approx(0.0, abs=1e-9)


def test_mapping_formula():
    prof = ParametricProfile.sine_squared(3, 8, 10, 15, n=11)
    m = to_mathieu(prof)
    omega = 11 * math.pi / 5
    assert m.Omega == pytest.approx(omega)
    assert m.a == pytest.approx(4 * 36.5 / omega**2)
    assert m.q == pytest.approx(2 * 27.5 / omega**2)
    assert m.q <= m.a / 2


def test_mapping_rejects_other_variants():
    with pytest.raises(WrongVariant):
        to_mathieu(ParametricProfile.piecewise_linear(3, 8, 10, 15))


def test_scan_matches_pointwise_traces():
    grid = stability_scan((0.5, 10.0), (0.0, 4.0), (7, 5), trim_wedge=False)
    for i in (0, 3, 6):
        for j in (0, 2, 4):
            a, q = grid["a"][i], grid["q"][j]
            assert grid["trace"][i, j] == pytest.approx(monodromy_trace(a, q), abs=1e-6)
    assert grid["trace"].shape == (7, 5)


def test_scan_wedge_and_threads():
    one = stability_scan((0, 10), (0, 5), 12)
    four = stability_scan((0, 10), (0, 5), 12, threads=4)
    assert np.array_equal(np.isnan(one["trace"]), ~one["in_wedge"])
    assert np.allclose(one["trace"], four["trace"], equal_nan=True)


def test_scan_resolution_validated():
    with pytest.raises(ConfigError):
        stability_scan(resolution=1)


def test_family_curve_is_straight_line_through_origin():
    tpl = ParametricProfile.sine_squared(3, 8, 10, 15, n=11)
    pts = np.array([(a, q) for _, a, q in profile_family_curve(tpl, np.linspace(10.5, 15, 10))])
    ratio = pts[:, 1] / pts[:, 0]
    assert np.allclose(ratio, 27.5 / (2 * 36.5))
