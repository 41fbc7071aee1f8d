"""Parameter sweeps of the squeezing pipeline and their on-disk records."""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, NumericalFailure
from .mode_evolution import SolverConfig
from .profiles import ParametricProfile, Variant
from .squeeze import squeeze_of_profile
from .stability import monodromy_trace, to_mathieu

AXES = ("tb", "omega", "shift")

SWEEP_COLUMNS = ("axis_value", "eta", "cosh2eta", "sinh2eta", "theta", "residual_unitarity",
                 "residual_hyperbolic", "a", "q", "trace", "error")

SPECTRAL_NOTE = (
    "mode frequency s*omega_i with omega_f scaled by the same s; t_a and t_b held fixed"
)


@dataclass(frozen=True)
class SweepSpec:
    profile_template: ParametricProfile
    axis: str
    range: tuple
    samples: int
    observation_time: float

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}, got {self.axis!r}")
        if int(self.samples) != self.samples or self.samples < 2:
            raise ConfigError("samples must be an integer >= 2")
        lo, hi = self.range
        if not hi >= lo:
            raise ConfigError("range must be [lo, hi] with hi >= lo")
        tpl = self.profile_template
        if self.axis == "tb":
            if not lo > tpl.t_a:
                raise ConfigError("t_b range must lie above t_a")
            if not hi < self.observation_time:
                raise ConfigError("t_b range must end before the observation time")
        elif self.axis == "shift":
            if lo < 0:
                raise ConfigError("shift range must be >= 0")
            if not tpl.t_b + hi <= self.observation_time:
                raise ConfigError("observation time must follow the most shifted process")
        else:
            if not lo > 0:
                raise ConfigError("mode-frequency range must be positive")
            if not tpl.t_b + tpl.shift <= self.observation_time:
                raise ConfigError("observation time must follow the process")

    def axis_values(self):
        return np.linspace(self.range[0], self.range[1], int(self.samples))

    def profile_at(self, value: float) -> ParametricProfile:
        tpl = self.profile_template
        if self.axis == "tb":
            if tpl.variant is Variant.CUSTOM:
                raise ConfigError("custom tabulated profiles cannot be swept along t_b")
            return replace(tpl, t_b=float(value))
        if self.axis == "shift":
            return tpl.with_shift(float(value))
        return tpl.scaled(float(value) / tpl.omega_i)

    def to_dict(self):
        d = asdict(self)
        d["profile_template"] = profile_to_dict(self.profile_template)
        d["range"] = list(self.range)
        return d


def profile_to_dict(p: ParametricProfile) -> dict:
    d = {"variant": p.variant.value, "omega_i": p.omega_i, "omega_f": p.omega_f,
         "t_a": p.t_a, "t_b": p.t_b, "n": p.n, "shift": p.shift}
    if p.variant is Variant.CUSTOM:
        d["table_t"] = list(p.table_t)
        d["table_omega_sq"] = list(p.table_omega_sq)
    return d


def _point(args):
    spec, value, cfg = args
    row = dict.fromkeys(SWEEP_COLUMNS, math.nan)
    row["axis_value"] = float(value)
    row["error"] = ""
    try:
        prof = spec.profile_at(value)
        res = squeeze_of_profile(prof, spec.observation_time, cfg)
        row.update(eta=res.eta, cosh2eta=res.cosh2eta, sinh2eta=res.sinh2eta, theta=res.theta,
                   residual_unitarity=res.residual_unitarity,
                   residual_hyperbolic=res.residual_hyperbolic)
        if prof.variant is Variant.SINE_SQUARED:
            m = to_mathieu(prof)
            row.update(a=m.a, q=m.q, trace=monodromy_trace(m.a, m.q))
    except (NumericalFailure, ConfigError, ValueError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def run_sweep(spec: SweepSpec, cfg: SolverConfig = SolverConfig(), workers: int = 1):
    """Rows (as dicts) in ascending axis order; failures are recorded per row."""
    jobs = [(spec, v, cfg) for v in spec.axis_values()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_point, jobs))
    else:
        rows = [_point(j) for j in jobs]
    return sorted(rows, key=lambda r: r["axis_value"])


def spectral_sweep(profile: ParametricProfile, omega_range, samples: int,
                   cfg: SolverConfig = SolverConfig()):
    """eta(omega) for a mode of frequency omega driven by the scaled template."""
    lo, hi = omega_range
    if not (lo > 0 and hi >= lo):
        raise ConfigError("omega range must be positive and ascending")
    if samples < 2:
        raise ConfigError("samples must be >= 2")
    rows = []
    for w in np.linspace(lo, hi, samples):
        res = squeeze_of_profile(profile.scaled(w / profile.omega_i), None, cfg)
        rows.append({"omega_mode": float(w), "eta": res.eta, "theta": res.theta})
    return rows


def cycle_averages(x, y):
    """Mean of y over each interval between consecutive local maxima.

    Returns (interval centers, averages); an oscillating but decaying curve
    gives a strictly decreasing sequence of averages.
    """
    x, y = np.asarray(x, float), np.asarray(y, float)
    peaks = [i for i in range(1, len(y) - 1) if y[i] > y[i - 1] and y[i] >= y[i + 1]]
    centers, means = [], []
    for i, j in zip(peaks[:-1], peaks[1:]):
        centers.append(0.5 * (x[i] + x[j]))
        means.append(np.trapezoid(y[i:j + 1], x[i:j + 1]) / (x[j] - x[i]))
    return np.array(centers), np.array(means)


def local_maxima(y):
    y = np.asarray(y, float)
    return [i for i in range(1, len(y) - 1) if y[i] > y[i - 1] and y[i] > y[i + 1]]


def write_table(path, rows, columns, metadata: dict):
    """CSV with a header row plus a JSON sidecar ``<path>.json``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in columns])
    meta = {"code_version": __version__, **metadata}
    path.with_suffix(path.suffix + ".json").write_text(json.dumps(meta, indent=2, sort_keys=True, default=_json_default))
    return path


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)
