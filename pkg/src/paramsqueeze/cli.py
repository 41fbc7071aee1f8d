"""Command-line front end.

Natural units throughout (hbar = c = 1): frequencies and rates in inverse
time, distances in time units.  Exit codes: 0 success, 1 selftest criteria
not met, 2 configuration or usage error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, load_config
from .errors import ConfigError, NumericalFailure
from .mode_evolution import solution_at_end
from .observables import CSV_COLUMNS, QuadOptions, evaluate_components
from .profiles import Variant, eval_omega_sq
from .squeeze import ab_phase, out_region_samples
from .stability import profile_family_curve, stability_scan
from .sweeps import SPECTRAL_NOTE, SWEEP_COLUMNS, SweepSpec, profile_to_dict, run_sweep, write_table

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(f"usage: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="paramsqueeze", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", type=Path, help="TOML run configuration")
    p.add_argument("--out", type=Path, help="output directory (overrides [output] directory)")
    p.add_argument("--threads", type=int, default=1, help="worker count for sweeps and grids")
    p.add_argument("--seedless", action="store_true",
                   help="reserved: nothing here draws random numbers; takes no value")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("profile", help="print omega^2(t) at the requested instants")
    sp.add_argument("--at", type=float, action="append", required=True, metavar="T")

    sq = sub.add_parser("squeeze", help="squeeze parameters at the end of the process")
    sq.add_argument("--t-later", type=float, help="second out-region sample (default t_b + 10/omega_f)")

    sw = sub.add_parser("sweep", help="eta along t_b, mode frequency or shift")
    sw.add_argument("--axis", choices=("tb", "omega", "shift"), required=True)
    sw.add_argument("--range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    sw.add_argument("--samples", type=int, required=True)
    sw.add_argument("--t-obs", type=float, help="observation time (default: 20 for tb, after the process otherwise)")

    st = sub.add_parser("stability", help="Mathieu monodromy-trace grid")
    st.add_argument("--a-range", type=float, nargs=2, default=(0.0, 10.0), metavar=("LO", "HI"))
    st.add_argument("--q-range", type=float, nargs=2, default=(0.0, 5.0), metavar=("LO", "HI"))
    st.add_argument("--res", type=int, default=400)
    st.add_argument("--tb-range", type=float, nargs=2, metavar=("LO", "HI"),
                    help="t_b range of the profile-family overlay curve (sine_squared profile)")
    st.add_argument("--tb-samples", type=int, default=91)

    ob = sub.add_parser("observables", help="late-time flux and density components")
    ob.add_argument("--r", type=float, required=True)
    ob.add_argument("--t-range", type=float, nargs=2, required=True, metavar=("LO", "HI"))
    ob.add_argument("--samples", type=int, required=True)

    sub.add_parser("selftest", help="run the numbered acceptance checks")
    return p


def _out_dir(args, cfg: RunConfig) -> Path:
    d = args.out if args.out is not None else cfg.out_dir
    d.mkdir(parents=True, exist_ok=True)
    return d


def _meta(args, cfg: RunConfig, **extra):
    return {"command": args.command, "config": cfg.raw, "solver": asdict(cfg.solver), **extra}


def cmd_profile(args, cfg):
    prof = cfg.require_profile()
    if any(t < 0 for t in args.at):
        raise ConfigError("--at: times must be >= 0 (the evolution starts at t = 0)")
    print("t\tomega_sq")
    for t in args.at:
        print(f"{t!r}\t{eval_omega_sq(prof, t)!r}")


def cmd_squeeze(args, cfg):
    prof = cfg.require_profile()
    t_later = args.t_later if args.t_later is not None else prof.end + 10.0 / prof.omega_f
    if t_later < prof.end:
        raise ConfigError("--t-later must not precede the end of the process")
    at_end, later = out_region_samples(prof, [prof.end, t_later], cfg.solver)
    a, b, theta_ab = ab_phase(solution_at_end(prof, cfg.solver), prof.omega_i, prof.omega_f)
    report = {
        "profile": profile_to_dict(prof),
        "t_b": prof.end,
        "t_later": t_later,
        **at_end.to_dict(),
        "eta_later": later.eta,
        "constancy_residual": abs(later.eta - at_end.eta),
        "A": a,
        "B": b,
        "theta_ab": theta_ab,
    }
    print(json.dumps(report, indent=2))


def cmd_sweep(args, cfg):
    prof = cfg.require_profile()
    if args.samples < 2:
        raise ConfigError("--samples must be >= 2")
    t_obs = args.t_obs
    if t_obs is None:
        t_obs = 20.0 if args.axis == "tb" else prof.t_b + (args.range[1] if args.axis == "shift" else prof.shift)
    spec = SweepSpec(prof, args.axis, tuple(args.range), args.samples, t_obs)
    rows = run_sweep(spec, cfg.solver, workers=max(1, args.threads))
    out = _out_dir(args, cfg) / f"sweep_{args.axis}.csv"
    meta = _meta(args, cfg, sweep=spec.to_dict(),
                 axis_semantics=SPECTRAL_NOTE if args.axis == "omega" else args.axis)
    if cfg.out_format == "json":
        out = out.with_suffix(".json")
        out.write_text(json.dumps({"meta": meta, "rows": rows}, indent=2))
    else:
        write_table(out, rows, SWEEP_COLUMNS, meta)
    failed = sum(1 for r in rows if r["error"])
    print(f"wrote {out} ({len(rows)} rows, {failed} failed)")


def cmd_stability(args, cfg):
    if args.res < 2:
        raise ConfigError("--res must be >= 2")
    grid = stability_scan(tuple(args.a_range), tuple(args.q_range), args.res, threads=max(1, args.threads))
    d = _out_dir(args, cfg)
    rows = []
    for i, a in enumerate(grid["a"]):
        for j, q in enumerate(grid["q"]):
            tr = grid["trace"][i, j]
            if np.isnan(tr):
                continue
            rows.append({"a": a, "q": q, "trace": tr, "stable": bool(abs(tr) <= 2.0)})
    meta = _meta(args, cfg, convention="stable means |trace| <= 2; cells with q > a/2 are omitted",
                 a_range=list(args.a_range), q_range=list(args.q_range), resolution=args.res)
    path = write_table(d / "stability_grid.csv", rows, ("a", "q", "trace", "stable"), meta)
    print(f"wrote {path} ({len(rows)} cells)")
    prof = cfg.profile
    if prof is not None and prof.variant is Variant.SINE_SQUARED:
        lo, hi = args.tb_range if args.tb_range else (prof.t_a + 0.5, prof.t_b)
        curve = [{"t_b": tb, "a": a, "q": q} for tb, a, q in profile_family_curve(prof, np.linspace(lo, hi, args.tb_samples))]
        cpath = write_table(d / "stability_curve.csv", curve, ("t_b", "a", "q"),
                            _meta(args, cfg, profile=profile_to_dict(prof)))
        print(f"wrote {cpath} ({len(curve)} points)")


def cmd_observables(args, cfg):
    if args.samples < 1:
        raise ConfigError("--samples must be >= 1")
    lo, hi = args.t_range
    if not lo > args.r:
        raise ConfigError("--t-range must start after r (retarded time t - r > 0)")
    rows = []
    for t in np.linspace(lo, hi, args.samples):
        comp = evaluate_components(cfg.atom, cfg.bath, args.r, float(t), QuadOptions())
        rows.append(dict(zip(CSV_COLUMNS, (args.r, float(t), *asdict(comp).values()))))
    meta = _meta(args, cfg, atom=asdict(cfg.atom), bath={k: (str(v) if isinstance(v, float) and math.isinf(v) else v)
                                                       for k, v in asdict(cfg.bath).items()},
                 sign_convention="T_rt < 0 is outward flow")
    path = write_table(_out_dir(args, cfg) / "observables.csv", rows, CSV_COLUMNS, meta)
    print(f"wrote {path} ({len(rows)} rows)")


def cmd_selftest(args, cfg):
    from .acceptance import run_all

    results = run_all()
    failed = [c.number for c in results if not c.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria met" + (f"; failing: {failed}" if failed else ""))
    return EXIT_FAILED if failed else EXIT_OK


COMMANDS = {
    "profile": cmd_profile,
    "squeeze": cmd_squeeze,
    "sweep": cmd_sweep,
    "stability": cmd_stability,
    "observables": cmd_observables,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        cfg = load_config(args.config) if args.config is not None else RunConfig()
        code = COMMANDS[args.command](args, cfg)
        return EXIT_OK if code is None else code
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
