"""Numbered acceptance checks, shared by the test-suite and ``selftest``.

Each check returns a :class:`Criterion` carrying a pass flag and a one-line
detail string with the measured numbers.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks
from scipy.stats import qmc

from .atomfield import AtomParams, BathSpec, chi_retarded_ft, fdr_residual
from .mode_evolution import solution_at_end
from .observables import continuity_check, density_stationary, flux_ns_combined, flux_stationary
from .profiles import ParametricProfile, Variant, septic_smoothstep
from .squeeze import bogoliubov_from_solution, out_region_samples, squeeze_from_solution, squeeze_of_profile
from .stability import monodromy, monodromy_trace
from .sweeps import SweepSpec, cycle_averages, local_maxima, run_sweep

EXAMPLE4_COSH2ETA = 25.62206


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number:2d}: {self.title} | {self.detail}"


def example4_profile():
    t_a = 1.5 * math.pi
    return ParametricProfile.sine_squared(1.0, 100.0, t_a, t_a + 0.05, n=1)


def criterion_1():
    start = time.perf_counter()
    res = squeeze_of_profile(example4_profile())
    elapsed = time.perf_counter() - start
    rel = abs(res.cosh2eta - EXAMPLE4_COSH2ETA) / EXAMPLE4_COSH2ETA
    ok = rel <= 1e-3 and elapsed < 1.0
    return Criterion(1, "short sine-squared quench reproduces cosh2eta", ok,
                     f"cosh2eta={res.cosh2eta:.7f} rel_err={rel:.2e} runtime={elapsed:.3f}s")


def criterion_2():
    limit = 0.5 * (1.0 / 100.0 + 100.0 / 1.0)
    errors = []
    for dur in (1e-2, 1e-3, 1e-4):
        res = squeeze_of_profile(ParametricProfile.piecewise_linear(1.0, 100.0, 1.0, 1.0 + dur))
        errors.append(abs(res.cosh2eta - limit))
    ok = all(b < a for a, b in zip(errors, errors[1:])) and errors[-1] / limit < 1e-3
    return Criterion(2, "sudden-quench limit 50.005", ok,
                     "errors=" + ", ".join(f"{e:.3e}" for e in errors))


def random_suite_profiles(count=100):
    """Deterministic quasi-random parameter cases covering all variants."""
    pts = qmc.Halton(d=5, scramble=False).random(count + 1)[1:]
    variants = list(Variant)
    cases = []
    for i, (u_wi, u_wf, u_dur, u_ta, u_n) in enumerate(pts):
        wi = 0.5 + 19.5 * u_wi
        wf = 0.5 + 19.5 * u_wf
        dur = 0.05 * (400.0 ** u_dur)  # log-uniform over [0.05, 20]
        t_a = 5.0 * u_ta
        v = variants[i % len(variants)]
        if v is Variant.CONSTANT:
            cases.append(ParametricProfile.constant(wi))
        elif v is Variant.CUSTOM:
            t = np.linspace(t_a, t_a + dur, 25)
            w2 = wi**2 + (wf**2 - wi**2) * septic_smoothstep(np.linspace(0, 1, 25))
            w2[0], w2[-1] = wi**2, wf**2
            cases.append(ParametricProfile.custom(t, w2))
        else:
            cases.append(ParametricProfile(v, wi, wf, t_a, t_a + dur, n=1 + 2 * int(6 * u_n)))
    return cases


def criterion_3():
    start = time.perf_counter()
    worst_u = worst_h = 0.0
    for prof in random_suite_profiles():
        sol = solution_at_end(prof)
        pair = bogoliubov_from_solution(sol, prof.omega_i, prof.omega_f)
        res = squeeze_from_solution(sol, prof.omega_i, prof.omega_f, prof.end)
        worst_u = max(worst_u, pair.residual_unitarity)
        worst_h = max(worst_h, res.residual_hyperbolic)
    elapsed = time.perf_counter() - start
    ok = worst_u <= 1e-8 and worst_h <= 1e-7 and elapsed < 30.0
    return Criterion(3, "unitarity and hyperbolic identities, 100 cases", ok,
                     f"max_unitarity={worst_u:.2e} max_hyperbolic={worst_h:.2e} runtime={elapsed:.2f}s")


def criterion_4():
    prof = ParametricProfile.sine_squared(3.0, 8.0, 10.0, 20.0, n=11)
    times = np.linspace(prof.end, prof.end + 10.0, 20)
    etas = np.array([r.eta for r in out_region_samples(prof, times)])
    spread_t = (etas.max() - etas.min()) / etas.mean()
    spec = SweepSpec(prof, "shift", (0.0, 7.0), 2, 40.0)
    shift_etas = np.array([squeeze_of_profile(spec.profile_at(d), 40.0).eta for d in (0.0, 1.0, 3.3, 7.0)])
    spread_s = (shift_etas.max() - shift_etas.min()) / shift_etas.mean()
    ok = spread_t <= 1e-7 and spread_s <= 1e-7
    return Criterion(4, "out-region constancy and shift invariance", ok,
                     f"time_spread={spread_t:.2e} shift_spread={spread_s:.2e}")


def criterion_5():
    details, ok = [], True
    pl = run_sweep(SweepSpec(ParametricProfile.piecewise_linear(3, 8, 10, 20), "tb", (10.5, 19.5), 181, 20.0))
    x = np.array([r["axis_value"] for r in pl])
    y = np.array([r["eta"] for r in pl])
    _, means = cycle_averages(x, y)
    pl_ok = len(means) >= 3 and bool(np.all(np.diff(means) < 0))
    ok &= pl_ok
    details.append(f"piecewise_linear cycle-averaged decreasing={pl_ok} ({len(means)} cycles)")
    for name, prof in (("smooth_septic", ParametricProfile.smooth_septic(3, 8, 10, 15)),
                       ("sine_squared_n1", ParametricProfile.sine_squared(3, 8, 10, 15, 1))):
        rows = run_sweep(SweepSpec(prof, "tb", (10.5, 15.0), 46, 20.0))
        eta = np.array([r["eta"] for r in rows])
        mono = bool(np.all(np.diff(eta) < 0))
        ok &= mono
        details.append(f"{name} strictly decreasing={mono}")
    return Criterion(5, "eta versus end time shapes", ok, "; ".join(details))


def criterion_6():
    rows = run_sweep(SweepSpec(ParametricProfile.sine_squared(3, 8, 10, 15, 11), "tb", (10.5, 15.0), 91, 20.0))
    eta = np.array([r["eta"] for r in rows])
    trace = np.array([r["trace"] for r in rows])
    med = np.median(eta)
    big = [i for i in local_maxima(eta) if eta[i] > 3 * med]
    overlay_ok = len(big) > 0 and all(abs(trace[i]) > 2 for i in big)
    dets = [abs(np.linalg.det(monodromy(a, q)) - 1) for a, q in ((1, 0.1), (3, 1), (7, 2), (10, 5))]
    qzero = [abs(monodromy_trace(a, 0.0) - 2 * math.cos(math.pi * math.sqrt(a))) for a in (0.25, 1, 2.25, 4)]
    ok = overlay_ok and max(dets) <= 1e-9 and max(qzero) <= 1e-8
    peaks = ", ".join(f"t_b={rows[i]['axis_value']:.2f} eta={eta[i]:.3f} trace={trace[i]:.3f}" for i in big)
    return Criterion(6, "large-eta peaks sit in unstable Mathieu cells", ok,
                     f"{peaks}; max|det-1|={max(dets):.1e} max q=0 err={max(qzero):.1e}")


def criterion_7():
    atom = AtomParams(1.0, 0.2, 1.0)
    worst = 0.0
    ok = True
    for beta in (math.inf, 2.0):
        for eta in (0.0, 0.5, 1.0):
            rr, hr, budget = flux_stationary(atom, BathSpec(beta, eta), 10.0)
            allowed = max(budget, 1e-8 * abs(rr))
            ok &= abs(rr + hr) <= allowed
            worst = max(worst, abs(rr + hr) / abs(rr))
    return Criterion(7, "stationary flux cancellation", ok, f"max |rr+hr|/|rr|={worst:.1e}")


def envelope_slope(taus, values):
    """Least-squares slope of log|peaks| of an oscillating signal."""
    pk, _ = find_peaks(np.abs(values))
    return np.polyfit(taus[pk], np.log(np.abs(values[pk])), 1)[0]


def nonstationary_decay_series(beta_T=math.inf, r=10.0, step=0.02):
    atom = AtomParams(1.0, 0.2, 1.0)
    bath = BathSpec(beta_T, 1.0)
    taus = np.arange(5.0, 40.0 + 1e-9, step)
    vals = np.array([flux_ns_combined(atom, bath, r, r + tau) for tau in taus])
    return taus, vals


def criterion_8():
    taus, vals = nonstationary_decay_series()
    slope = envelope_slope(taus, vals)
    ok = abs(slope - (-0.4)) <= 0.05 * 0.4
    return Criterion(8, "log-envelope slope of nonstationary flux is -2 gamma", ok,
                     f"slope={slope:.4f} target=-0.4000 +/- 0.0200")


def criterion_9():
    atom = AtomParams(1.0, 0.2, 1.0)
    finite = density_stationary(atom, BathSpec(2.0, 0.0), 20.0) / density_stationary(atom, BathSpec(2.0, 0.0), 40.0)
    zero = density_stationary(atom, BathSpec(math.inf, 0.0), 20.0) / density_stationary(atom, BathSpec(math.inf, 0.0), 40.0)
    ok = abs(finite - 8.0) <= 0.8
    return Criterion(9, "stationary density ratio r=20 over r=40 is 8", ok,
                     f"ratio(beta_T=2)={finite:.4f} ratio(zero T)={zero:.4f} target=8 +/- 0.8")


def criterion_10():
    atom = AtomParams(1.0, 0.2, 1.0)
    bath = BathSpec(math.inf, 1.0)
    res = [continuity_check(atom, bath, 10.0, 25.0, h, h)[0] for h in (1e-2, 5e-3, 2.5e-3)]
    ratios = [a / b for a, b in zip(res, res[1:])]
    ok = res[0] <= 1e-3 and all(3.0 <= q <= 5.0 for q in ratios)
    return Criterion(10, "continuity residual and second-order convergence", ok,
                     "residuals=" + ", ".join(f"{v:.2e}" for v in res) + " ratios=" + ", ".join(f"{q:.2f}" for q in ratios))


def criterion_11():
    atom = AtomParams(1.0, 0.2, 1.0)
    w = np.linspace(-10.0, 10.0, 1000)
    rel = np.abs(fdr_residual(atom, w)) / np.abs(chi_retarded_ft(atom, w))
    ok = rel.max() <= 1e-12
    return Criterion(11, "fluctuation-dissipation identity", ok, f"max relative residual={rel.max():.1e}")


ALL = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
       criterion_7, criterion_8, criterion_9, criterion_10, criterion_11)


def run_all(echo=print):
    results = []
    for check in ALL:
        c = check()
        echo(c.line())
        results.append(c)
    return results
