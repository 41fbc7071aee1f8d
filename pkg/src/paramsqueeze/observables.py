"""Late-time energy flux and energy density around the atom.

Every spectral integral is assembled as a list of :class:`Term` objects,
amplitude(w) * exp(i k w) with k built from 2r and 2t, and handed to the
oscillatory quadrature.  The field propagator contributes c = 1/(4 pi r)
per factor, so F^2 = c^2 exp(2 i w r) and |F|^2 = c^2.

Sign convention: <T_rt> follows the stress-tensor component used in the
continuity equation  d_t T_tt - r^-2 d_r (r^2 T_rt) = 0,  so outward energy
flow makes T_rt negative.
"""
from __future__ import annotations

import cmath
import csv
import math
from dataclasses import astuple, dataclass
from pathlib import Path

import numpy as np

from .atomfield import (
    AtomParams,
    BathSpec,
    chi_advanced_ft,
    chi_retarded_ft,
    coth_half,
    omega_coth_half,
)
from .quadrature import QuadResult, Term, default_cutoff, integrate_panels, integrate_terms

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class ObservationPoint:
    r: float
    t: float

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("r must be positive")
        if not self.t > self.r:
            raise ValueError("radiation formulas need t > r")


@dataclass(frozen=True)
class StressTensorComponents:
    tr_st_rr: float
    tr_st_hr: float
    tr_ns_rr: float
    tr_ns_hr: float
    tt_st_total: float
    tt_ns_total: float
    quadrature_error: float


@dataclass(frozen=True)
class QuadOptions:
    rtol: float = 1e-12
    cutoff: float | None = None


def _cutoff(atom, r, opts):
    return opts.cutoff if opts.cutoff is not None else default_cutoff(atom.omega_r, atom.gamma, r)


def _twice_real(res: QuadResult):
    return 2.0 * res.value.real, 2.0 * res.error


def _rho_ns(bath):
    s = bath.sinh2eta
    return lambda w: s * coth_half(bath.beta_T, w)


def _w_rho_ns(bath):
    s = bath.sinh2eta
    return lambda w: s * _omega_coth(bath.beta_T, w)


def _omega_coth(beta_T, w):
    if math.isinf(beta_T):
        return w
    return omega_coth_half(beta_T, w)


# stationary parts -----------------------------------------------------------

def flux_stationary(atom: AtomParams, bath: BathSpec, r: float, opts: QuadOptions = QuadOptions()):
    """Radiation-radiation and cross parts of the stationary flux.

    Both integrals run over the symmetric window [-W, W].  Each part alone
    grows like log W (the spectral weight decays only as 1/w), so the parts
    are cutoff-regularized values while their sum is cutoff independent.
    Returns (rr, hr, error_budget).
    """
    if not r > 0:
        raise ValueError("r must be positive")
    cut = _cutoff(atom, r, opts)
    c2 = 1.0 / (FOUR_PI * r) ** 2
    pref = atom.e_sq / TWO_PI * c2 * bath.cosh2eta

    def w2_rho(w):
        # w^2 coth(beta w / 2), odd and regular at the origin
        return w * _omega_coth_sym(bath.beta_T, w)

    def f_rr(w):
        return -pref * w2_rho(w) * chi_retarded_ft(atom, w).imag + 0j

    def f_hr(w):
        return -1j * pref * w2_rho(w) * chi_retarded_ft(atom, w)

    width = min(cut / 64.0, atom.gamma)
    rr, e1, _ = integrate_panels(f_rr, -cut, cut, width, rtol=opts.rtol)
    hr, e2, _ = integrate_panels(f_hr, -cut, cut, width, rtol=opts.rtol)
    return rr.real, hr.real, e1 + e2 + abs(hr.imag)


def _omega_coth_sym(beta_T, w):
    if math.isinf(beta_T):
        return np.abs(w)
    return omega_coth_half(beta_T, w)


def density_stationary_terms(atom: AtomParams, bath: BathSpec, r: float):
    """Half-line terms of the stationary density (the full-line integrand is even)."""
    c2 = 1.0 / (FOUR_PI * r) ** 2
    pref = -atom.e_sq / math.pi * bath.cosh2eta * c2
    k = 2.0 * r

    def wrho(w):
        return _omega_coth(bath.beta_T, w)

    def rho(w):
        return coth_half(bath.beta_T, w)

    # (w/r) Re[G F^2] - (1/2r^2) Im[G F^2], with Re/Im split into G and G* pieces
    return [
        Term(lambda w: pref * (0.5 / r) * wrho(w) * chi_retarded_ft(atom, w), k),
        Term(lambda w: pref * (0.5 / r) * wrho(w) * chi_advanced_ft(atom, w), -k),
        Term(lambda w: pref * (0.25j / r**2) * rho(w) * chi_retarded_ft(atom, w), k),
        Term(lambda w: pref * (-0.25j / r**2) * rho(w) * chi_advanced_ft(atom, w), -k),
    ]


def density_stationary(atom: AtomParams, bath: BathSpec, r: float, opts: QuadOptions = QuadOptions(),
                       with_error: bool = False):
    """Late-time residual energy density (time independent)."""
    if not r > 0:
        raise ValueError("r must be positive")
    res = integrate_terms(density_stationary_terms(atom, bath, r), _cutoff(atom, r, opts), rtol=opts.rtol)
    return (res.value.real, res.error) if with_error else res.value.real


# nonstationary parts --------------------------------------------------------

def _ns_setup(atom, bath, r, t):
    if not r > 0:
        raise ValueError("r must be positive")
    if not t > r:
        raise ValueError("nonstationary radiation formulas need t > r")
    c2 = 1.0 / (FOUR_PI * r) ** 2
    phase = cmath.exp(1j * bath.theta)
    return c2, phase, 2.0 * r - 2.0 * t, -2.0 * t


def flux_ns_rr_terms(atom, bath, r, t):
    c2, ph, k_ret, _ = _ns_setup(atom, bath, r, t)
    e2 = atom.e_sq
    pref = 1j * e2 * e2 / TWO_PI * ph * c2 / FOUR_PI
    wr = _w_rho_ns(bath)
    return [Term(lambda w: pref * w * wr(w) * (1j * w - 1.0 / r) * chi_retarded_ft(atom, w) ** 2, k_ret)]


def flux_ns_hr_terms(atom, bath, r, t):
    c2, ph, k_ret, k_loc = _ns_setup(atom, bath, r, t)
    pref = 1j * atom.e_sq / TWO_PI * ph * c2
    wr = _w_rho_ns(bath)
    # F [w F - (2/r) Im F] = c^2 [(w + i/r) e^{2iwr} - (i/r)]
    return [
        Term(lambda w: pref * wr(w) * chi_retarded_ft(atom, w) * (w + 1j / r), k_ret),
        Term(lambda w: pref * wr(w) * chi_retarded_ft(atom, w) * (-1j / r), k_loc),
    ]


def flux_ns_combined_terms(atom, bath, r, t):
    """Sum of the w-proportional pieces: Re G (G / G*) = m (w_R^2 - w^2) G^2."""
    c2, ph, k_ret, _ = _ns_setup(atom, bath, r, t)
    pref = 1j * atom.e_sq / TWO_PI * ph * c2
    wr = _w_rho_ns(bath)
    return [Term(lambda w: pref * w * wr(w) * atom.m * (atom.omega_r**2 - w * w)
                 * chi_retarded_ft(atom, w) ** 2, k_ret)]


def flux_ns_one_over_r_terms(atom, bath, r, t):
    """Sum of the 1/r pieces, -i (e^2/r) w rho G F [e^2 w G F / 4pi + 2 Im F] + c.c."""
    c2, ph, k_ret, k_loc = _ns_setup(atom, bath, r, t)
    e2 = atom.e_sq
    pref = -1j * e2 / (TWO_PI * r) * ph * c2
    wr = _w_rho_ns(bath)
    return [
        Term(lambda w: pref * wr(w) * chi_retarded_ft(atom, w) * (e2 * w * chi_retarded_ft(atom, w) / FOUR_PI - 1j), k_ret),
        Term(lambda w: pref * wr(w) * chi_retarded_ft(atom, w) * 1j, k_loc),
    ]


def _ns_integral(terms, atom, r, opts):
    return _twice_real(integrate_terms(terms, _cutoff(atom, r, opts), rtol=opts.rtol))


def flux_nonstationary(atom: AtomParams, bath: BathSpec, r: float, t: float,
                       opts: QuadOptions = QuadOptions(), with_error: bool = False):
    """(rr, hr, combined_leading) of the nonstationary flux at (r, t)."""
    if bath.eta == 0:
        _ns_setup(atom, bath, r, t)
        out = (0.0, 0.0, 0.0)
        return (*out, 0.0) if with_error else out
    rr, e1 = _ns_integral(flux_ns_rr_terms(atom, bath, r, t), atom, r, opts)
    hr, e2 = _ns_integral(flux_ns_hr_terms(atom, bath, r, t), atom, r, opts)
    cl, e3 = _ns_integral(flux_ns_combined_terms(atom, bath, r, t), atom, r, opts)
    return (rr, hr, cl, e1 + e2 + e3) if with_error else (rr, hr, cl)


def flux_ns_combined(atom: AtomParams, bath: BathSpec, r: float, t: float,
                     opts: QuadOptions = QuadOptions()) -> float:
    """combined_leading alone, without the separate rr and hr integrals."""
    if bath.eta == 0:
        _ns_setup(atom, bath, r, t)
        return 0.0
    return _ns_integral(flux_ns_combined_terms(atom, bath, r, t), atom, r, opts)[0]


def flux_nonstationary_one_over_r(atom, bath, r, t, opts: QuadOptions = QuadOptions()):
    if bath.eta == 0:
        return 0.0
    return _ns_integral(flux_ns_one_over_r_terms(atom, bath, r, t), atom, r, opts)[0]


def density_ns_rr_terms(atom, bath, r, t):
    c2, ph, k_ret, _ = _ns_setup(atom, bath, r, t)
    e2 = atom.e_sq
    pref = e2 * e2 / TWO_PI * ph * c2 / FOUR_PI
    wr = _w_rho_ns(bath)
    return [Term(lambda w: pref * wr(w) * (w * w + 1j * w / r - 0.5 / r**2) * chi_retarded_ft(atom, w) ** 2, k_ret)]


def density_ns_hr_terms(atom, bath, r, t):
    c2, ph, k_ret, k_loc = _ns_setup(atom, bath, r, t)
    pref = -atom.e_sq / TWO_PI * ph * c2
    rho = _rho_ns(bath)
    wr = _w_rho_ns(bath)
    # G {i (w^2 + i w/r) F^2 + r^-2 F Im F}, with F Im F = c^2 (e^{2iwr} - 1) / (2i)
    return [
        Term(lambda w: pref * chi_retarded_ft(atom, w) * (1j * wr(w) * (w + 1j / r) - 0.5j / r**2 * rho(w)), k_ret),
        Term(lambda w: pref * chi_retarded_ft(atom, w) * (0.5j / r**2) * rho(w), k_loc),
    ]


def density_nonstationary(atom: AtomParams, bath: BathSpec, r: float, t: float,
                          opts: QuadOptions = QuadOptions(), with_error: bool = False):
    """Nonstationary energy density (radiation-radiation plus cross part)."""
    if bath.eta == 0:
        _ns_setup(atom, bath, r, t)
        return (0.0, 0.0) if with_error else 0.0
    terms = density_ns_rr_terms(atom, bath, r, t) + density_ns_hr_terms(atom, bath, r, t)
    val, err = _ns_integral(terms, atom, r, opts)
    return (val, err) if with_error else val


def flux_ns_total(atom, bath, r, t, opts: QuadOptions = QuadOptions()):
    terms = flux_ns_rr_terms(atom, bath, r, t) + flux_ns_hr_terms(atom, bath, r, t)
    return _ns_integral(terms, atom, r, opts)[0]


# power exchanged by the atom --------------------------------------------------

def power_ns_terms(atom, bath, t):
    if not t > 0:
        raise ValueError("t must be positive")
    ph = cmath.exp(1j * bath.theta)
    e2 = atom.e_sq
    wr = _w_rho_ns(bath)
    xi = [Term(lambda w: 1j * e2 / TWO_PI * ph * w * wr(w) / FOUR_PI * chi_retarded_ft(atom, w), -2.0 * t)]
    gam = [Term(lambda w: -e2 * e2 / TWO_PI * ph * w * w * wr(w) / FOUR_PI**2
                * chi_retarded_ft(atom, w) ** 2, -2.0 * t)]
    return xi, gam


def power_nonstationary(atom: AtomParams, bath: BathSpec, t: float, opts: QuadOptions = QuadOptions()):
    """(P_xi, P_gamma): nonstationary power delivered by the field and lost to damping."""
    xi, gam = power_ns_terms(atom, bath, t)
    if bath.eta == 0:
        return 0.0, 0.0
    cut = opts.cutoff if opts.cutoff is not None else default_cutoff(atom.omega_r, atom.gamma)
    p_xi = _twice_real(integrate_terms(xi, cut, rtol=opts.rtol))[0]
    p_gam = _twice_real(integrate_terms(gam, cut, rtol=opts.rtol))[0]
    return p_xi, p_gam


# consistency checks -----------------------------------------------------------

def continuity_check(atom: AtomParams, bath: BathSpec, r: float, t: float, h_r: float = 1e-2,
                     h_t: float = 1e-2, opts: QuadOptions = QuadOptions()):
    """Normalized residual of d_t T_tt - r^-2 d_r (r^2 T_rt) for the nonstationary parts.

    Returns (residual, degenerate) where ``degenerate`` flags the 0/0 case
    of an unsqueezed bath.
    """
    if not (t - r > h_t and r > h_r):
        raise ValueError("need t - r > h_t and r > h_r")
    if bath.eta == 0:
        return 0.0, True
    cut = _cutoff(atom, r, opts)
    o = QuadOptions(rtol=opts.rtol, cutoff=cut)
    dt = (density_nonstationary(atom, bath, r, t + h_t, o) - density_nonstationary(atom, bath, r, t - h_t, o)) / (2 * h_t)
    up = (r + h_r) ** 2 * flux_ns_total(atom, bath, r + h_r, t, o)
    dn = (r - h_r) ** 2 * flux_ns_total(atom, bath, r - h_r, t, o)
    div = (up - dn) / (2 * h_r) / r**2
    scale = max(abs(dt), abs(div))
    if scale == 0:
        return 0.0, True
    return abs(dt - div) / scale, False


def evaluate_components(atom: AtomParams, bath: BathSpec, r: float, t: float,
                        opts: QuadOptions = QuadOptions()) -> StressTensorComponents:
    ObservationPoint(r, t)
    rr_st, hr_st, e_st = flux_stationary(atom, bath, r, opts)
    rr, hr, _, e_ns = flux_nonstationary(atom, bath, r, t, opts, with_error=True)
    tt_st, e_tt = density_stationary(atom, bath, r, opts, with_error=True)
    tt_ns, e_ttn = density_nonstationary(atom, bath, r, t, opts, with_error=True)
    return StressTensorComponents(rr_st, hr_st, rr, hr, tt_st, tt_ns, e_st + e_ns + e_tt + e_ttn)


CSV_COLUMNS = ("r", "t", "tr_st_rr", "tr_st_hr", "tr_ns_rr", "tr_ns_hr", "tt_st", "tt_ns", "err")


def write_components_csv(path, rows):
    """rows: iterable of (r, t, StressTensorComponents)."""
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for r, t, comp in rows:
            w.writerow([repr(float(x)) for x in (r, t, *astuple(comp))])

