"""Parametric frequency processes omega^2(t).

A profile holds the mode frequency at ``omega_i`` for ``t <= t_a + shift``,
drives it through a prescribed transition and parks it at ``omega_f`` for
``t >= t_b + shift``.  Evaluation is lazy and vectorized so that an ODE
stepper can query arbitrary instants.
"""
from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import ConfigError


class Variant(str, enum.Enum):
    CONSTANT = "constant"
    PIECEWISE_LINEAR = "piecewise_linear"
    SINE_SQUARED = "sine_squared"
    SMOOTH_SEPTIC = "smooth_septic"
    CUSTOM = "custom"


class ProfileError(ConfigError):
    """Raised for profile parameters that violate the profile invariants."""


def septic_smoothstep(x):
    """Normalized septic transition shape on [0, 1].

    S(x) = 35x^4 - 84x^5 + 70x^6 - 20x^7, so S(0) = 0, S(1) = 1 and the
    first three derivatives vanish at both ends.
    """
    x = np.asarray(x, dtype=float)
    return x**4 * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)))


@dataclass(frozen=True)
class ParametricProfile:
    variant: Variant
    omega_i: float
    omega_f: float
    t_a: float = 0.0
    t_b: float = 1.0
    n: int = 1
    shift: float = 0.0
    table_t: Optional[tuple] = None
    table_omega_sq: Optional[tuple] = None
    _interp: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        if not (self.omega_i > 0 and self.omega_f > 0):
            raise ProfileError("omega_i and omega_f must be positive")
        if not math.isfinite(self.shift) or self.shift < 0:
            raise ProfileError("shift must be a finite value >= 0")
        if self.variant is Variant.CUSTOM:
            self._init_table()
            return
        if not self.t_b > self.t_a:
            raise ProfileError(f"t_b ({self.t_b}) must exceed t_a ({self.t_a})")
        if self.variant is Variant.SINE_SQUARED:
            if int(self.n) != self.n or self.n < 1 or self.n % 2 == 0:
                raise ProfileError(f"n must be a positive odd integer, got {self.n}")
        if self.variant is Variant.CONSTANT and self.omega_i != self.omega_f:
            raise ProfileError("constant profile needs omega_i == omega_f")

    def _init_table(self):
        if self.table_t is None or self.table_omega_sq is None:
            raise ProfileError("custom profile needs table_t and table_omega_sq")
        t = np.asarray(self.table_t, dtype=float)
        w2 = np.asarray(self.table_omega_sq, dtype=float)
        if t.ndim != 1 or t.shape != w2.shape or t.size < 2:
            raise ProfileError("custom table needs two equal-length columns with >= 2 rows")
        if np.any(np.diff(t) <= 0):
            raise ProfileError("custom table times must be strictly ascending")
        for name, got, want in (("first", w2[0], self.omega_i**2), ("last", w2[-1], self.omega_f**2)):
            if abs(got - want) > 1e-9 * max(1.0, abs(want)):
                raise ProfileError(
                    f"{name} tabulated omega_sq {got} does not match the endpoint frequency squared {want}"
                )
        object.__setattr__(self, "table_t", tuple(t.tolist()))
        object.__setattr__(self, "table_omega_sq", tuple(w2.tolist()))
        object.__setattr__(self, "t_a", float(t[0]))
        object.__setattr__(self, "t_b", float(t[-1]))
        object.__setattr__(self, "_interp", PchipInterpolator(t, w2, extrapolate=False))

    # convenience constructors -------------------------------------------------

    @classmethod
    def constant(cls, omega, shift=0.0):
        return cls(Variant.CONSTANT, omega, omega, 0.0, 1.0, shift=shift)

    @classmethod
    def piecewise_linear(cls, omega_i, omega_f, t_a, t_b, shift=0.0):
        return cls(Variant.PIECEWISE_LINEAR, omega_i, omega_f, t_a, t_b, shift=shift)

    @classmethod
    def sine_squared(cls, omega_i, omega_f, t_a, t_b, n=1, shift=0.0):
        return cls(Variant.SINE_SQUARED, omega_i, omega_f, t_a, t_b, n=n, shift=shift)

    @classmethod
    def smooth_septic(cls, omega_i, omega_f, t_a, t_b, shift=0.0):
        return cls(Variant.SMOOTH_SEPTIC, omega_i, omega_f, t_a, t_b, shift=shift)

    @classmethod
    def custom(cls, t: Sequence[float], omega_sq: Sequence[float], shift=0.0):
        w2 = np.asarray(omega_sq, dtype=float)
        return cls(
            Variant.CUSTOM,
            math.sqrt(w2[0]),
            math.sqrt(w2[-1]),
            table_t=tuple(np.asarray(t, dtype=float)),
            table_omega_sq=tuple(w2),
            shift=shift,
        )

    @classmethod
    def from_table_file(cls, path, shift=0.0):
        text = Path(path).read_text().replace(",", " ")
        try:
            data = np.loadtxt(io.StringIO(text), dtype=float, ndmin=2)
        except ValueError as exc:
            raise ProfileError(f"{path}: {exc}") from None
        if data.shape[1] != 2:
            raise ProfileError(f"{path}: expected two columns (t, omega_sq), got {data.shape[1]}")
        return cls.custom(data[:, 0], data[:, 1], shift=shift)

    # geometry -----------------------------------------------------------------

    @property
    def start(self) -> float:
        """Instant at which the process begins, shift included."""
        return self.t_a + self.shift

    @property
    def end(self) -> float:
        return self.t_b + self.shift

    @property
    def duration(self) -> float:
        return self.t_b - self.t_a

    def with_shift(self, shift: float) -> "ParametricProfile":
        return replace(self, shift=shift)

    def scaled(self, s: float) -> "ParametricProfile":
        """Same shape with both endpoint frequencies multiplied by ``s``."""
        if self.variant is Variant.CUSTOM:
            return ParametricProfile.custom(
                self.table_t, s * s * np.asarray(self.table_omega_sq), shift=self.shift
            )
        return replace(self, omega_i=s * self.omega_i, omega_f=s * self.omega_f)


def _shape(profile: ParametricProfile, x):
    """Transition shape in [0, 1] evaluated at normalized time x in [0, 1]."""
    v = profile.variant
    if v is Variant.PIECEWISE_LINEAR:
        return x
    if v is Variant.SINE_SQUARED:
        return np.sin(0.5 * profile.n * math.pi * x) ** 2
    if v is Variant.SMOOTH_SEPTIC:
        return septic_smoothstep(x)
    return np.zeros_like(x)


def eval_omega_sq(profile: ParametricProfile, t):
    """omega^2(t); scalar in, float out, array in, array out."""
    t_arr = np.asarray(t, dtype=float)
    wi2, wf2 = profile.omega_i**2, profile.omega_f**2
    if profile.variant is Variant.CONSTANT:
        out = np.full_like(t_arr, wi2)
    elif profile.variant is Variant.CUSTOM:
        tt = t_arr - profile.shift
        inside = profile._interp(np.clip(tt, profile.t_a, profile.t_b))
        out = np.where(tt <= profile.t_a, wi2, np.where(tt >= profile.t_b, wf2, inside))
    else:
        x = np.clip((t_arr - profile.start) / profile.duration, 0.0, 1.0)
        out = wi2 + (wf2 - wi2) * _shape(profile, x)
    return float(out) if out.ndim == 0 else out


def smoothness_report(profile: ParametricProfile, max_order: int = 4) -> dict:
    """Estimate how many one-sided derivatives of omega^2 agree at t_a and t_b.

    One-sided finite differences of order k are taken on both sides of a
    junction at two step sizes.  A derivative jump that is real survives the
    step refinement, while a matching derivative leaves a mismatch that
    shrinks with the step.  The reported order is the number of leading
    derivatives that match (``math.inf`` for the constant profile).
    """
    if profile.variant is Variant.CONSTANT:
        return {"continuity_order_at_ta": math.inf, "continuity_order_at_tb": math.inf}

    def mismatch(t0, k, h):
        j = np.arange(k + 1)
        coeff = np.array([(-1) ** (k - i) * math.comb(k, i) for i in j], dtype=float)
        fwd = coeff @ np.asarray(eval_omega_sq(profile, t0 + j * h)) / h**k
        bwd = coeff @ np.asarray(eval_omega_sq(profile, t0 - (k - j) * h)) / h**k
        return abs(fwd - bwd)

    scale = abs(profile.omega_f**2 - profile.omega_i**2) or 1.0
    report = {}
    for key, t0 in (("continuity_order_at_ta", profile.start), ("continuity_order_at_tb", profile.end)):
        order = max_order
        for k in range(1, max_order + 1):
            h = 2e-3 * profile.duration
            coarse, fine = mismatch(t0, k, h), mismatch(t0, k, h / 2)
            floor = 1e-6 * scale / profile.duration**k
            if fine > floor and fine > 0.75 * coarse:
                order = k - 1
                break
        report[key] = order
    return report
