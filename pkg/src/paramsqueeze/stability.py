"""Mathieu form of the sine-squared process and Floquet stability.

With Omega = n pi / (t_b - t_a) and Omega (t - t_a) = 2 tau the mode equation
inside the window becomes  x'' + (a - 2 q cos 2 tau) x = 0  with
a = 4 A^2 / Omega^2, q = 2 B^2 / Omega^2, A^2 = (w_f^2 + w_i^2)/2 and
B^2 = (w_f^2 - w_i^2)/2.  Stability is read off the trace of the monodromy
matrix over one period tau in [0, pi]: |trace| <= 2 means bounded solutions.
"""
from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConfigError
from .profiles import ParametricProfile, Variant


class WrongVariant(ConfigError):
    pass


@dataclass(frozen=True)
class MathieuParams:
    a: float
    q: float
    Omega: float
    A_sq: float
    B_sq: float


def to_mathieu(profile: ParametricProfile) -> MathieuParams:
    if profile.variant is not Variant.SINE_SQUARED:
        raise WrongVariant(f"Mathieu mapping needs a sine_squared profile, got {profile.variant.value}")
    omega = profile.n * math.pi / profile.duration
    a_sq = 0.5 * (profile.omega_f**2 + profile.omega_i**2)
    b_sq = 0.5 * (profile.omega_f**2 - profile.omega_i**2)
    return MathieuParams(4.0 * a_sq / omega**2, 2.0 * b_sq / omega**2, omega, a_sq, b_sq)


def monodromy(a: float, q: float, rtol: float = 1e-12, atol: float = 1e-14) -> np.ndarray:
    """Monodromy matrix [[y1, y2], [y1', y2']] at tau = pi."""

    def f(tau, y):
        k = a - 2.0 * q * math.cos(2.0 * tau)
        return [y[1], -k * y[0], y[3], -k * y[2]]

    res = solve_ivp(f, (0.0, math.pi), [1.0, 0.0, 0.0, 1.0], method="DOP853", rtol=rtol, atol=atol)
    y = res.y[:, -1]
    return np.array([[y[0], y[2]], [y[1], y[3]]])


def monodromy_trace(a: float, q: float) -> float:
    return float(np.trace(monodromy(a, q)))


def floquet_exponent(trace: float) -> complex:
    """mu with trace = 2 cosh(pi mu); Re mu > 0 exactly when |trace| > 2."""
    mu = cmath.acosh(trace / 2.0) / math.pi
    return complex(abs(mu.real), mu.imag)


def _half_period_traces(a, q, steps):
    """Vectorized classical RK4 over tau in [0, pi/2].

    For the even Hill potential the full-period trace follows from the
    half-period data: trace = 2 (y1 y2' + y1' y2)(pi/2).
    """
    a = np.asarray(a, dtype=float)
    q = np.asarray(q, dtype=float)
    h = 0.5 * math.pi / steps
    y1, p1 = np.ones_like(a), np.zeros_like(a)
    y2, p2 = np.zeros_like(a), np.ones_like(a)

    def k_of(tau):
        return a - 2.0 * q * math.cos(2.0 * tau)

    for i in range(steps):
        tau = i * h
        k0, km, k1 = k_of(tau), k_of(tau + 0.5 * h), k_of(tau + h)
        out = []
        for y, p in ((y1, p1), (y2, p2)):
            dy1, dp1 = p, -k0 * y
            dy2, dp2 = p + 0.5 * h * dp1, -km * (y + 0.5 * h * dy1)
            dy3, dp3 = p + 0.5 * h * dp2, -km * (y + 0.5 * h * dy2)
            dy4, dp4 = p + h * dp3, -k1 * (y + h * dy3)
            out.append((y + h / 6.0 * (dy1 + 2 * dy2 + 2 * dy3 + dy4),
                        p + h / 6.0 * (dp1 + 2 * dp2 + 2 * dp3 + dp4)))
        (y1, p1), (y2, p2) = out
    return 2.0 * (y1 * p2 + p1 * y2)


def stability_scan(a_range=(0.0, 10.0), q_range=(0.0, 5.0), resolution=(400, 400),
                   trim_wedge=True, threads=1, steps=None):
    """Monodromy traces on a regular (a, q) grid.

    Returns a dict with 1-d axes ``a`` and ``q`` and 2-d arrays ``trace``,
    ``stable`` and ``in_wedge`` indexed as [i_a, i_q].  Cells outside the
    physical wedge q <= a/2 are kept but flagged (and set to NaN when
    ``trim_wedge`` is true).
    """
    na, nq = (resolution, resolution) if np.isscalar(resolution) else resolution
    if na < 2 or nq < 2:
        raise ConfigError("resolution must be at least 2 per axis")
    a_ax = np.linspace(*a_range, na)
    q_ax = np.linspace(*q_range, nq)
    A, Q = np.meshgrid(a_ax, q_ax, indexing="ij")
    if steps is None:
        lam = math.sqrt(max(abs(a_range[0]), abs(a_range[1])) + 2 * max(abs(q_range[0]), abs(q_range[1])))
        steps = max(200, int(math.ceil(250 * max(lam, 1.0))))
    chunks = np.array_split(np.arange(na), max(1, min(threads, na)))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        parts = list(pool.map(lambda idx: _half_period_traces(A[idx], Q[idx], steps), chunks))
    trace = np.concatenate(parts, axis=0)
    in_wedge = Q <= 0.5 * A + 1e-15
    if trim_wedge:
        trace = np.where(in_wedge, trace, np.nan)
    return {"a": a_ax, "q": q_ax, "trace": trace, "stable": np.abs(trace) <= 2.0, "in_wedge": in_wedge}


def profile_family_curve(template: ParametricProfile, t_b_values):
    """(t_b, a, q) along a family of sine-squared profiles with varying end time."""
    rows = []
    for tb in np.asarray(t_b_values, dtype=float):
        m = to_mathieu(ParametricProfile.sine_squared(
            template.omega_i, template.omega_f, template.t_a, float(tb), template.n))
        rows.append((float(tb), m.a, m.q))
    return rows
