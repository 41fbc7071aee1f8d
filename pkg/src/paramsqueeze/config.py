"""Strict TOML run configuration.

Sections and keys (all optional unless a command needs them)::

    [profile]  variant, omega_i, omega_f, t_a, t_b, n, shift, table
    [atom]     m, gamma, omega_r
    [bath]     beta_T (number, inf, or "zero_temperature"), eta, theta
    [solver]   rel_tol, abs_tol, max_step, wronskian_alarm
    [output]   directory, format ("csv" or "json")

Unknown sections or keys are rejected with a message naming them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import tomli

from .atomfield import AtomParams, BathSpec
from .errors import ConfigError
from .mode_evolution import SolverConfig
from .profiles import ParametricProfile, ProfileError, Variant

_KEYS = {
    "profile": {"variant", "omega_i", "omega_f", "t_a", "t_b", "n", "shift", "table"},
    "atom": {"m", "gamma", "omega_r"},
    "bath": {"beta_T", "eta", "theta"},
    "solver": {"rel_tol", "abs_tol", "max_step", "wronskian_alarm"},
    "output": {"directory", "format"},
}


@dataclass
class RunConfig:
    profile: Optional[ParametricProfile] = None
    atom: AtomParams = field(default_factory=AtomParams)
    bath: BathSpec = field(default_factory=BathSpec)
    solver: SolverConfig = field(default_factory=SolverConfig)
    out_dir: Path = Path(".")
    out_format: str = "csv"
    raw: dict = field(default_factory=dict)

    def require_profile(self) -> ParametricProfile:
        if self.profile is None:
            raise ConfigError("this command needs a [profile] section")
        return self.profile


def _number(section, key, value, integer=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"[{section}] {key}: expected a number, got {value!r}")
    if integer and int(value) != value:
        raise ConfigError(f"[{section}] {key}: expected an integer, got {value!r}")
    return int(value) if integer else float(value)


def _profile(sec: dict, base: Path) -> ParametricProfile:
    if "variant" not in sec:
        raise ConfigError("[profile] variant: missing")
    try:
        variant = Variant(sec["variant"])
    except ValueError:
        raise ConfigError(f"[profile] variant: unknown value {sec['variant']!r}; "
                          f"choose from {[v.value for v in Variant]}") from None
    shift = _number("profile", "shift", sec.get("shift", 0.0))
    try:
        if variant is Variant.CUSTOM:
            if "table" not in sec:
                raise ConfigError("[profile] table: custom profiles need a table path")
            return ParametricProfile.from_table_file(base / sec["table"], shift=shift)
        nums = {k: _number("profile", k, sec[k]) for k in ("omega_i", "omega_f", "t_a", "t_b") if k in sec}
        if variant is Variant.CONSTANT:
            w = nums.get("omega_i", nums.get("omega_f"))
            if w is None:
                raise ConfigError("[profile] omega_i: missing")
            return ParametricProfile(variant, w, nums.get("omega_f", w), shift=shift)
        for k in ("omega_i", "omega_f", "t_a", "t_b"):
            if k not in nums:
                raise ConfigError(f"[profile] {k}: missing")
        n = _number("profile", "n", sec.get("n", 1), integer=True)
        return ParametricProfile(variant, nums["omega_i"], nums["omega_f"], nums["t_a"], nums["t_b"],
                                 n=n, shift=shift)
    except OSError as exc:
        raise ConfigError(f"[profile] table: {exc}") from None
    except ProfileError as exc:
        raise ConfigError(f"[profile] {exc}") from None


def _beta(value):
    if isinstance(value, str):
        if value.lower() in ("zero_temperature", "inf", "infinity"):
            return math.inf
        raise ConfigError(f"[bath] beta_T: expected a number or 'zero_temperature', got {value!r}")
    return _number("bath", "beta_T", value)


def parse_config(data: dict, base: Path = Path(".")) -> RunConfig:
    for section, body in data.items():
        if section not in _KEYS:
            raise ConfigError(f"unknown section [{section}]")
        if not isinstance(body, dict):
            raise ConfigError(f"[{section}] must be a table")
        extra = sorted(set(body) - _KEYS[section])
        if extra:
            raise ConfigError(f"[{section}] unknown key(s): {', '.join(extra)}")
    cfg = RunConfig(raw=data)
    if "profile" in data:
        cfg.profile = _profile(data["profile"], base)
    try:
        if "atom" in data:
            cfg.atom = AtomParams(**{k: _number("atom", k, v) for k, v in data["atom"].items()})
        if "bath" in data:
            b = dict(data["bath"])
            kw = {k: _number("bath", k, v) for k, v in b.items() if k != "beta_T"}
            if "beta_T" in b:
                kw["beta_T"] = _beta(b["beta_T"])
            cfg.bath = BathSpec(**kw)
        if "solver" in data:
            cfg.solver = SolverConfig(**{k: _number("solver", k, v) for k, v in data["solver"].items()})
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    out = data.get("output", {})
    if "directory" in out:
        cfg.out_dir = base / str(out["directory"])
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"[output] format: expected 'csv' or 'json', got {fmt!r}")
    cfg.out_format = fmt
    return cfg


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomli.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: malformed TOML: {exc}") from None
    return parse_config(data, path.parent)
