"""Response functions and spectral kernels of the atom-field system.

Fourier convention: f(t) = int dw/2pi f~(w) exp(-i w t).  Natural units,
hbar = c = 1.  The coupling is fixed by the damping, e^2 = 8 pi gamma m.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class AtomParams:
    m: float = 1.0
    gamma: float = 0.2
    omega_r: float = 1.0

    def __post_init__(self):
        if not (self.m > 0 and self.gamma > 0 and self.omega_r > 0):
            raise ConfigError("m, gamma and omega_r must be positive")
        if not self.gamma < self.omega_r:
            raise ConfigError(f"underdamped regime needs gamma < omega_r (got {self.gamma} >= {self.omega_r})")

    @property
    def Omega_d(self) -> float:
        return math.sqrt(self.omega_r**2 - self.gamma**2)

    @property
    def e_sq(self) -> float:
        return 8.0 * math.pi * self.gamma * self.m


@dataclass(frozen=True)
class BathSpec:
    beta_T: float = math.inf
    eta: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not self.beta_T > 0:
            raise ConfigError("beta_T must be positive (use inf for zero temperature)")
        if not self.eta >= 0:
            raise ConfigError("eta must be >= 0")

    @property
    def zero_temperature(self) -> bool:
        return math.isinf(self.beta_T)

    @property
    def cosh2eta(self) -> float:
        return math.cosh(2.0 * self.eta)

    @property
    def sinh2eta(self) -> float:
        return math.sinh(2.0 * self.eta)


def chi_retarded_ft(atom: AtomParams, omega):
    """G~(w) = 1 / (m (w_R^2 - w^2 - 2 i gamma w))."""
    w = np.asarray(omega)
    return 1.0 / (atom.m * (atom.omega_r**2 - w * w - 2j * atom.gamma * w))


def chi_advanced_ft(atom: AtomParams, omega):
    """Analytic continuation of conj(G~(w)) off the real axis."""
    w = np.asarray(omega)
    return 1.0 / (atom.m * (atom.omega_r**2 - w * w + 2j * atom.gamma * w))


def chi_retarded_time(atom: AtomParams, tau):
    tau = np.asarray(tau, dtype=float)
    om = atom.Omega_d
    return np.where(tau >= 0, np.exp(-atom.gamma * tau) * np.sin(om * tau) / (atom.m * om), 0.0)


def field_retarded_ft(r: float, omega):
    if not r > 0:
        raise ValueError("r must be positive; the coincident limit is not evaluated numerically")
    return np.exp(1j * np.asarray(omega) * r) / (4.0 * math.pi * r)


def coth_half(beta_T: float, omega):
    """coth(beta w / 2) for Re w > 0 or real w != 0; sign(w) at zero temperature.

    Written through exp(-beta w) so that large arguments neither overflow nor
    lose the complex part.
    """
    w = np.asarray(omega)
    if math.isinf(beta_T):
        return np.sign(w.real) + 0.0 * w
    flip = np.where(w.real < 0, -1.0, 1.0)
    e = np.exp(-beta_T * w * flip)
    return flip * (1.0 + e) / (1.0 - e)


def omega_coth_half(beta_T: float, omega):
    """w coth(beta w / 2), regular at w = 0 where it equals 2 / beta."""
    w = np.asarray(omega)
    if math.isinf(beta_T):
        return w * np.sign(w.real)
    x = 0.5 * beta_T * w
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, w)
    series = (2.0 / beta_T) * (1.0 + x * x / 3.0)
    return np.where(small, series, safe * coth_half(beta_T, safe))


def spectral_kernels(bath: BathSpec, omega):
    """(rho_ST, rho_NS) = (cosh 2eta, sinh 2eta) * coth(beta w / 2)."""
    w = np.asarray(omega)
    if not bath.zero_temperature and np.any(w == 0):
        raise ValueError("the bare kernels are singular at w = 0 at finite temperature")
    c = coth_half(bath.beta_T, w)
    return bath.cosh2eta * c, bath.sinh2eta * c


def fdr_residual(atom: AtomParams, omega):
    """Im G~ - 2 m gamma w |G~|^2, zero up to rounding."""
    g = chi_retarded_ft(atom, omega)
    return g.imag - 2.0 * atom.m * atom.gamma * np.asarray(omega) * np.abs(g) ** 2


def hadamard_chi_ft(atom: AtomParams, bath: BathSpec, omega):
    """Late-time stationary Hadamard spectrum cosh2eta coth(beta w/2) Im G~(w)."""
    w = np.asarray(omega, dtype=float)
    g = chi_retarded_ft(atom, w)
    # coth * Im G = (w coth) * 2 m gamma |G|^2 stays finite at w = 0
    return bath.cosh2eta * omega_coth_half(bath.beta_T, w) * 2.0 * atom.m * atom.gamma * np.abs(g) ** 2


def tmst_expectations(bath: BathSpec, nbar1: float, nbar2: float) -> dict:
    """Second moments of the two-mode squeezed thermal state."""
    if nbar1 < 0 or nbar2 < 0:
        raise ValueError("occupation numbers must be >= 0")
    ch2, sh2 = math.cosh(bath.eta) ** 2, math.sinh(bath.eta) ** 2
    pair = -0.5 * cmath.exp(1j * bath.theta) * (nbar1 + nbar2 + 1.0) * bath.sinh2eta
    return {
        "a1a1": 0j,
        "a2a2": 0j,
        "a1a2": pair,
        "a1dag_a2dag": pair.conjugate(),
        "a1dag_a2": 0j,
        "a1dag_a1": nbar1 * ch2 + (nbar2 + 1.0) * sh2,
        "a2dag_a2": nbar2 * ch2 + (nbar1 + 1.0) * sh2,
        "a1_a1dag": (nbar1 + 1.0) * ch2 + nbar2 * sh2,
        "a2_a2dag": (nbar2 + 1.0) * ch2 + nbar1 * sh2,
    }


def hadamard_coefficients(bath: BathSpec, nbar: float):
    """Coefficients of the stationary and nonstationary Hadamard pieces.

    For a pair of modes with equal thermal occupation the symmetrized
    moments give  (1/2)<{a1, a1^dag}> = rho_ST / 2  and
    (1/2)<{a1, a2}> = -exp(i theta) rho_NS / 2, with coth = 2 nbar + 1.
    Returns (2 * the first, -2 exp(-i theta) * the second), which must equal
    (rho_ST, rho_NS).
    """
    m = tmst_expectations(bath, nbar, nbar)
    st = m["a1_a1dag"] + m["a1dag_a1"]
    ns = -2.0 * m["a1a2"] * cmath.exp(-1j * bath.theta)
    return st, ns
