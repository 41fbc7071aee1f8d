"""Radial falloff of the late-time stationary energy density.

Prints density(r) / density(2r) for zero and finite temperature and the
local power-law exponent, next to the finite-temperature far-field form
gamma cosh(2 eta) / (4 pi beta w_R^2 r^4).
"""
import argparse
import math
from pathlib import Path

import numpy as np

from paramsqueeze.atomfield import AtomParams, BathSpec
from paramsqueeze.observables import density_stationary
from paramsqueeze.sweeps import write_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out/density"))
    args = ap.parse_args()

    atom = AtomParams(1.0, 0.2, 1.0)
    radii = np.geomspace(2.0, 80.0, 23)
    rows = []
    for beta in (math.inf, 2.0):
        bath = BathSpec(beta, 0.0)
        vals = np.array([density_stationary(atom, bath, r) for r in radii])
        slope = np.gradient(np.log(np.abs(vals)), np.log(radii))
        for r, v, s in zip(radii, vals, slope):
            far = atom.gamma / (4 * math.pi * beta * atom.omega_r**2 * r**4)
            rows.append({"beta_T": str(beta), "r": r, "density": v, "local_exponent": s, "thermal_far_field": far})
        ratio = density_stationary(atom, bath, 20.0) / density_stationary(atom, bath, 40.0)
        print(f"beta_T={beta}: density(20)/density(40) = {ratio:.4f}, local exponent at r=40: {slope[-5]:.3f}")
    write_table(args.out / "density.csv", rows, ("beta_T", "r", "density", "local_exponent", "thermal_far_field"), {})


if __name__ == "__main__":
    main()
