"""Fundamental solutions of  d'' + omega^2(t) d = 0.

The two real solutions start at t = 0 from (d1, d1', d2, d2') = (1, 0, 0, 1).
Before the process starts they are known in closed form, inside the
transition window they are integrated with an explicit 8th order
Runge-Kutta pair (DOP853), and after it they are rotated analytically.
"""
from __future__ import annotations

import csv
import math
from dataclasses import astuple, dataclass
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NumericalFailure
from .profiles import ParametricProfile, Variant, eval_omega_sq


class WronskianDrift(NumericalFailure):
    """|W - 1| exceeded the configured alarm level."""


class StepLimit(NumericalFailure):
    """The adaptive stepper stalled or failed."""


@dataclass(frozen=True)
class SolverConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_step: float = math.inf
    wronskian_alarm: float = 1e-8

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.max_step > 0 and self.wronskian_alarm > 0):
            raise ValueError("solver tolerances and max_step must be positive")


@dataclass(frozen=True)
class FundamentalSolution:
    t: float
    d1: float
    d1_dot: float
    d2: float
    d2_dot: float

    @property
    def wronskian(self) -> float:
        return self.d1 * self.d2_dot - self.d1_dot * self.d2

    def as_array(self):
        return np.array([self.d1, self.d1_dot, self.d2, self.d2_dot])


def in_region(omega_i: float, t: float) -> FundamentalSolution:
    c, s = math.cos(omega_i * t), math.sin(omega_i * t)
    return FundamentalSolution(t, c, -omega_i * s, s / omega_i, c)


def continue_out_region(sol_at_tb: FundamentalSolution, omega_f: float, t: float) -> FundamentalSolution:
    """Rotate a solution through a constant-frequency stretch of length t - t_b."""
    tau = t - sol_at_tb.t
    if tau < 0:
        raise ValueError(f"t={t} precedes the seed instant {sol_at_tb.t}")
    c, s = math.cos(omega_f * tau), math.sin(omega_f * tau)
    d1 = sol_at_tb.d1 * c + sol_at_tb.d1_dot * s / omega_f
    d1_dot = -sol_at_tb.d1 * omega_f * s + sol_at_tb.d1_dot * c
    d2 = sol_at_tb.d2 * c + sol_at_tb.d2_dot * s / omega_f
    d2_dot = -sol_at_tb.d2 * omega_f * s + sol_at_tb.d2_dot * c
    return FundamentalSolution(t, d1, d1_dot, d2, d2_dot)


def _rhs(profile):
    def f(t, y):
        w2 = eval_omega_sq(profile, t)
        return [y[1], -w2 * y[0], y[3], -w2 * y[2]]

    return f


def _integrate(profile, t0, t1, y0, cfg, dense=False):
    res = solve_ivp(
        _rhs(profile), (t0, t1), y0, method="DOP853",
        rtol=cfg.rel_tol, atol=cfg.abs_tol, max_step=cfg.max_step, dense_output=dense,
    )
    if res.status != 0:
        raise StepLimit(f"integration over [{t0}, {t1}] failed: {res.message}")
    return res


def _check(sol: FundamentalSolution, cfg: SolverConfig) -> FundamentalSolution:
    drift = abs(sol.wronskian - 1.0)
    if not drift <= cfg.wronskian_alarm:
        raise WronskianDrift(f"|W-1| = {drift:.3e} at t={sol.t} exceeds {cfg.wronskian_alarm:.1e}")
    return sol


def solution_at_end(profile: ParametricProfile, cfg: SolverConfig = SolverConfig()) -> FundamentalSolution:
    """Fundamental solution at the end of the process, t_b + shift."""
    seed = in_region(profile.omega_i, profile.start)
    if profile.variant is Variant.CONSTANT:
        return _check(in_region(profile.omega_i, profile.end), cfg)
    res = _integrate(profile, profile.start, profile.end, seed.as_array(), cfg)
    y = res.y[:, -1]
    return _check(FundamentalSolution(profile.end, *map(float, y)), cfg)


def evolve(
    profile: ParametricProfile,
    t_target: float,
    cfg: SolverConfig = SolverConfig(),
    out_region: str = "analytic",
) -> FundamentalSolution:
    """Fundamental solution at ``t_target``.

    ``out_region="integrate"`` keeps stepping the ODE past the end of the
    process instead of rotating analytically; it exists as a cross-check.
    """
    if t_target < 0:
        raise ValueError("t_target must be >= 0")
    if t_target <= profile.start or profile.variant is Variant.CONSTANT:
        return _check(in_region(profile.omega_i, t_target), cfg)
    seed = in_region(profile.omega_i, profile.start).as_array()
    if t_target <= profile.end:
        y = _integrate(profile, profile.start, t_target, seed, cfg).y[:, -1]
        return _check(FundamentalSolution(t_target, *map(float, y)), cfg)
    if out_region == "integrate":
        y = _integrate(profile, profile.start, t_target, seed, cfg).y[:, -1]
        return _check(FundamentalSolution(t_target, *map(float, y)), cfg)
    if out_region != "analytic":
        raise ValueError(f"unknown out_region mode {out_region!r}")
    end = solution_at_end(profile, cfg)
    return _check(continue_out_region(end, profile.omega_f, t_target), cfg)


def trajectory(profile: ParametricProfile, times: Iterable[float], cfg: SolverConfig = SolverConfig()):
    """Solutions at every requested time (ascending), sharing one integration."""
    times = np.asarray(sorted(times), dtype=float)
    if times.size and times[0] < 0:
        raise ValueError("times must be >= 0")
    out = []
    dense = None
    end = None
    if profile.variant is not Variant.CONSTANT and np.any(times > profile.start):
        seed = in_region(profile.omega_i, profile.start).as_array()
        dense = _integrate(profile, profile.start, profile.end, seed, cfg, dense=True).sol
        end = FundamentalSolution(profile.end, *map(float, dense(profile.end)))
    for t in times:
        if t <= profile.start or dense is None:
            sol = in_region(profile.omega_i, t)
        elif t <= profile.end:
            sol = FundamentalSolution(float(t), *map(float, dense(t)))
        else:
            sol = continue_out_region(end, profile.omega_f, float(t))
        out.append(_check(sol, cfg))
    return out


def write_trajectory_csv(path, solutions: Iterable[FundamentalSolution]):
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "d1", "d1_dot", "d2", "d2_dot", "W"])
        for s in solutions:
            w.writerow([repr(float(x)) for x in (*astuple(s), s.wronskian)])
