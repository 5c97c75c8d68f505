"""Command-line front end: times, run, sweep, certify.

Exit codes: 0 success, 2 invalid parameters or config, 3 horizon shorter than
the guaranteed time, 4 capture or certificate failure (a theorem violation,
i.e. an implementation bug signal).
"""

import argparse
import itertools
import sys
from dataclasses import replace

import numpy as np

from .config import ScenarioConfig, apply_sweep_point, demo_config, load_config
from .engine import HorizonError, admissibility_audit, run_game, write_trajectory_csv
from .model import AdmissibilityError, ParameterError, l2_norm, validate_params
from .times import guaranteed_time, monotonicity_profile

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_HORIZON = 3
EXIT_THEOREM = 4


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", metavar="PATH", help="scenario config JSON (default: built-in demo)")
    sp.add_argument("--out", metavar="PATH", help="output CSV path")
    sp.add_argument("--seed", type=int, metavar="U64", help="override evader seed")
    sp.add_argument("--eps", type=float, metavar="REAL", help="override capture tolerance")
    sp.add_argument("--steps", type=int, metavar="INT", help="override grid step count")
    sp.add_argument(
        "--dump-config", action="store_true",
        help="print the effective config as JSON and exit",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2pursuit",
        description="Guaranteed pursuit times and capture simulation for the "
        "linear pursuit-evasion game on l2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler, doc in (
        ("times", cmd_times, "print per-coordinate T_i, T, T0 and the improvement ratio"),
        ("run", cmd_run, "simulate one game, write the trajectory CSV, report capture"),
        ("sweep", cmd_sweep, "tabulate T and T0 over configured parameter axes"),
        ("certify", cmd_certify, "check the f/g monotonicity certificates on a log grid"),
    ):
        sp = sub.add_parser(name, help=doc)
        _add_common(sp)
        sp.set_defaults(handler=handler)
    return parser


def _effective_config(args) -> ScenarioConfig:
    cfg = load_config(args.config) if args.config else demo_config()
    if args.seed is not None:
        cfg = replace(cfg, evader=replace(cfg.evader, seed=args.seed))
    if args.steps is not None:
        cfg = replace(cfg, grid=replace(cfg.grid, steps=args.steps))
    if args.eps is not None:
        cfg = replace(cfg, eps=args.eps)
    if args.out is not None:
        cfg = replace(cfg, out=args.out)
    return cfg


def cmd_times(cfg: ScenarioConfig) -> int:
    p = validate_params(cfg.to_game_params())
    times = guaranteed_time(p)
    shown = min(10, times.per_coordinate.size)
    print(f"per-coordinate switch times (first {shown} of {times.per_coordinate.size}):")
    for i in range(shown):
        print("  T_%-4d = %.12g" % (i + 1, times.per_coordinate[i]))
    print("T      = %.12g" % times.guaranteed)
    print("T0     = %.12g" % times.baseline)
    print("T/T0   = %.12g" % (times.guaranteed / times.baseline))
    print("argmin lambda index = %d" % (times.argmin_lambda_index + 1))
    print("limit regime (infimum at machine zero): %s" % ("yes" if times.limit_regime else "no"))
    return EXIT_OK


def cmd_run(cfg: ScenarioConfig) -> int:
    p = validate_params(cfg.to_game_params())
    times = guaranteed_time(p)
    grid = cfg.to_time_grid(times)
    policy = cfg.evader.to_policy()
    result = run_game(p, policy, grid, eps=cfg.eps)
    out = cfg.out or "trajectory.csv"
    write_trajectory_csv(out, result.trajectory)
    audit = admissibility_audit(result.trajectory, p.rho, p.sigma)
    report = result.report
    print("backend           = %s" % result.backend)
    print("captured          = %s" % ("true" if report.captured else "false"))
    if report.capture_time is not None:
        print("capture_time      = %.12g" % report.capture_time)
    print("guaranteed_T      = %.12g" % report.guaranteed_T)
    print("baseline_T0       = %.12g" % report.baseline_T0)
    print("T/T0              = %.12g" % (report.guaranteed_T / report.baseline_T0))
    print("residual_norm_at_T = %.6g (eps = %.6g)" % (report.residual_norm_at_T, result.eps))
    print("tail_bound_at_T   = %.6g" % report.tail_bound_at_T)
    print("max ||u||         = %.12g (rho = %.12g)" % (audit.max_norm_u, p.rho))
    print("max ||v||         = %.12g (sigma = %.12g)" % (audit.max_norm_v, p.sigma))
    print("csv               = %s" % out)
    ok = (
        report.captured
        and report.capture_time is not None
        and report.capture_time <= report.guaranteed_T + grid.h
        and audit.ok
    )
    if not ok:
        print("capture within guaranteed_T failed; theorem violation", file=sys.stderr)
        return EXIT_THEOREM
    return EXIT_OK


def cmd_sweep(cfg: ScenarioConfig) -> int:
    if not cfg.sweep:
        raise ParameterError("sweep", "at least one sweep axis is required")
    for ax in cfg.sweep:
        if len(ax.values) == 0:
            raise ParameterError("sweep", f"axis {ax.param!r} has no values")
        if not all(np.isfinite(v) for v in ax.values):
            raise ParameterError("sweep", f"axis {ax.param!r} has nonfinite values")
    params = tuple(ax.param for ax in cfg.sweep)
    lines = [",".join(params) + ",T,T0,ratio"]
    for combo in itertools.product(*(ax.values for ax in cfg.sweep)):
        point = apply_sweep_point(cfg, params, combo)
        p = validate_params(point.to_game_params())
        times = guaranteed_time(p)
        cells = ["%.17g" % v for v in combo]
        cells += [
            "%.17g" % times.guaranteed,
            "%.17g" % times.baseline,
            "%.17g" % (times.guaranteed / times.baseline),
        ]
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print("wrote %d rows to %s" % (len(lines) - 1, cfg.out))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_certify(cfg: ScenarioConfig) -> int:
    cert = cfg.certify
    if not (cert.x_min > 0.0 and cert.x_max > cert.x_min):
        raise ParameterError("certify.x_min", "need 0 < x_min < x_max")
    if cert.points < 2:
        raise ParameterError("certify.points", "need at least 2 sample points")
    if cert.c is not None:
        c = cert.c
    else:
        p = validate_params(cfg.to_game_params())
        c = l2_norm(p.z0) / (p.rho - p.sigma)
    xs = np.geomspace(cert.x_min, cert.x_max, cert.points)
    prof = monotonicity_profile(c, xs)
    checks = (
        ("f strictly decreasing", bool(np.all(np.diff(prof.f) < 0.0))),
        ("g(x) < 0 for all x > 0", bool(np.all(prof.g < 0.0))),
        ("g'(x) < 0 for all x > 0", bool(np.all(prof.g_prime < 0.0))),
    )
    print("certify: c = %.12g, %d points on [%g, %g]" % (c, cert.points, cert.x_min, cert.x_max))
    all_ok = True
    for label, ok in checks:
        print("[%s] %s" % ("PASS" if ok else "FAIL", label))
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_THEOREM


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _effective_config(args)
        if args.dump_config:
            sys.stdout.write(cfg.to_json())
            return EXIT_OK
        return args.handler(cfg)
    except HorizonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HORIZON
    except (ParameterError, AdmissibilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # keep the exit-code contract exhaustive
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
