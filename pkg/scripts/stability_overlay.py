"""Mathieu stability grid with the n=11 sine-squared family curve on top.

Each large eta peak of the t_b sweep should sit inside a resonance tongue
(|trace| > 2).  The grid, the curve and the peak table are written as CSV.
"""
import argparse
from pathlib import Path

import numpy as np

from paramsqueeze.profiles import ParametricProfile
from paramsqueeze.stability import profile_family_curve, stability_scan
from paramsqueeze.sweeps import SweepSpec, local_maxima, run_sweep, write_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out/stability"))
    ap.add_argument("--res", type=int, default=200)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    tpl = ParametricProfile.sine_squared(3, 8, 10, 15, n=11)
    grid = stability_scan((0, 10), (0, 5), args.res, threads=args.threads)
    cells = [{"a": a, "q": q, "trace": grid["trace"][i, j]}
             for i, a in enumerate(grid["a"]) for j, q in enumerate(grid["q"])
             if np.isfinite(grid["trace"][i, j])]
    write_table(args.out / "grid.csv", cells, ("a", "q", "trace"), {"resolution": args.res})

    tbs = np.linspace(10.5, 15.0, 91)
    curve = [{"t_b": tb, "a": a, "q": q} for tb, a, q in profile_family_curve(tpl, tbs)]
    write_table(args.out / "curve.csv", curve, ("t_b", "a", "q"), {})

    rows = run_sweep(SweepSpec(tpl, "tb", (10.5, 15.0), 91, 20.0))
    eta = np.array([r["eta"] for r in rows])
    peaks = [rows[i] for i in local_maxima(eta) if eta[i] > 3 * np.median(eta)]
    write_table(args.out / "peaks.csv", peaks, ("axis_value", "eta", "a", "q", "trace"), {})
    for p in peaks:
        print(f"t_b={p['axis_value']:.2f} eta={p['eta']:.3f} (a, q)=({p['a']:.3f}, {p['q']:.3f}) "
              f"trace={p['trace']:.3f} unstable={abs(p['trace']) > 2}")


if __name__ == "__main__":
    main()
