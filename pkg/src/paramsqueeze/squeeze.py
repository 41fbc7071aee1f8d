"""Bogoliubov coefficients and two-mode squeeze parameters (eta, theta).

The squeeze phase is referenced to the end of the process: the out-region
winding 2*omega_f*(t - t_b) is stripped before reporting theta in [0, 2pi).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import NumericalFailure
from .mode_evolution import (
    FundamentalSolution,
    SolverConfig,
    continue_out_region,
    evolve,
    solution_at_end,
)
from .profiles import ParametricProfile

TWO_PI = 2.0 * math.pi


class UnitarityViolation(NumericalFailure):
    pass


@dataclass(frozen=True)
class BogoliubovPair:
    alpha: complex
    beta: complex

    @property
    def residual_unitarity(self) -> float:
        return abs(abs(self.alpha) ** 2 - abs(self.beta) ** 2 - 1.0)


@dataclass(frozen=True)
class SqueezeResult:
    eta: float
    theta: float
    cosh2eta: float
    sinh2eta: float
    residual_unitarity: float
    residual_hyperbolic: float
    phase_undefined: bool = False

    def to_dict(self):
        return asdict(self)


def bogoliubov_from_solution(sol: FundamentalSolution, omega_i: float, omega_f: float,
                             tol: float = 1e-6) -> BogoliubovPair:
    norm = 2.0 * math.sqrt(omega_i * omega_f)
    a = complex(omega_i * omega_f * sol.d2 - sol.d1_dot, omega_f * sol.d1 + omega_i * sol.d2_dot)
    b = complex(omega_i * omega_f * sol.d2 + sol.d1_dot, -omega_f * sol.d1 + omega_i * sol.d2_dot)
    pair = BogoliubovPair(a / norm, b / norm)
    if pair.residual_unitarity > tol:
        raise UnitarityViolation(f"| |alpha|^2 - |beta|^2 - 1 | = {pair.residual_unitarity:.3e}")
    return pair


def _pqc(sol, omega_i, omega_f):
    p = sol.d1_dot**2 / (omega_f * omega_i) + omega_i * sol.d2_dot**2 / omega_f
    q = omega_f * sol.d1**2 / omega_i + omega_f * omega_i * sol.d2**2
    c = sol.d1 * sol.d1_dot / omega_i + omega_i * sol.d2 * sol.d2_dot
    return p, q, c


def squeeze_from_solution(sol: FundamentalSolution, omega_i: float, omega_f: float,
                          t_b: float) -> SqueezeResult:
    """Squeeze parameters from the out-region solution ``sol`` (taken at sol.t >= t_b)."""
    if sol.t < t_b:
        raise ValueError(f"solution time {sol.t} precedes the end of the process {t_b}")
    p, q, c = _pqc(sol, omega_i, omega_f)
    cosh2 = 0.5 * (p + q)
    cos_part = 0.5 * (p - q)
    sin_part = -c
    sinh2 = math.hypot(cos_part, sin_part)
    pair = bogoliubov_from_solution(sol, omega_i, omega_f)
    undefined = sinh2 < 1e-12
    theta = 0.0
    if not undefined:
        theta = (math.atan2(sin_part, cos_part) + 2.0 * omega_f * (sol.t - t_b)) % TWO_PI
    return SqueezeResult(
        eta=0.5 * math.asinh(sinh2),
        theta=theta,
        cosh2eta=cosh2,
        sinh2eta=sinh2,
        residual_unitarity=pair.residual_unitarity,
        residual_hyperbolic=abs(cosh2**2 - sinh2**2 - 1.0),
        phase_undefined=undefined,
    )


def ab_phase(sol_at_tb: FundamentalSolution, omega_i: float, omega_f: float):
    """(A, B, theta) built from the solution at the end of the process.

    A = 2(d1 d1'/w_i + w_i d2 d2') and B = P - Q, so sqrt(A^2 + B^2) equals
    2 sinh(2 eta).
    """
    p, q, c = _pqc(sol_at_tb, omega_i, omega_f)
    a, b = 2.0 * c, p - q
    theta = math.atan2(-a, b) % TWO_PI if math.hypot(a, b) >= 2e-12 else 0.0
    return a, b, theta


def squeeze_of_profile(profile: ParametricProfile, t_obs: float | None = None,
                       cfg: SolverConfig = SolverConfig()) -> SqueezeResult:
    """Full pipeline: evolve to t_obs (default t_b) and extract the squeezing."""
    if t_obs is None:
        sol = solution_at_end(profile, cfg)
    else:
        if t_obs < profile.end:
            raise ValueError(f"t_obs={t_obs} lies before the end of the process {profile.end}")
        sol = evolve(profile, t_obs, cfg)
    return squeeze_from_solution(sol, profile.omega_i, profile.omega_f, profile.end)


def shift_invariance_check(profile: ParametricProfile, delta: float, t_obs: float,
                           cfg: SolverConfig = SolverConfig()) -> dict:
    if t_obs < profile.t_b + delta:
        raise ValueError("t_obs must lie in the out-region of the shifted process")
    base = profile.with_shift(0.0)
    moved = profile.with_shift(delta)
    r0 = squeeze_of_profile(base, t_obs, cfg)
    r1 = squeeze_of_profile(moved, t_obs, cfg)
    dtheta = (r1.theta - r0.theta + math.pi) % TWO_PI - math.pi
    return {
        "eta_unshifted": r0.eta,
        "eta_shifted": r1.eta,
        "abs_diff": abs(r1.eta - r0.eta),
        "theta_diff": abs(dtheta),
    }


def out_region_samples(profile: ParametricProfile, times, cfg: SolverConfig = SolverConfig()):
    """Squeeze results at several out-region instants from a single integration."""
    end = solution_at_end(profile, cfg)
    return [
        squeeze_from_solution(continue_out_region(end, profile.omega_f, float(t)),
                              profile.omega_i, profile.omega_f, profile.end)
        for t in np.asarray(times, dtype=float)
    ]
