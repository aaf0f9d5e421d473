"""Command-line entry point.

Exit status: 0 on safe termination, 1 if any run collided, 2 on a
configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .control import PlantParams, default_worst_case
from .detectability import DetectabilityModel, detection_range
from .harness import compare_modes, run_scenario
from .lidar import LidarSpec, beam_gap
from .reports import emit_reports, write_detectability_csv, write_envelope_csvs
from .scenario import DEFAULT_SIGMA, ScenarioError, load_scenario

EXIT_OK, EXIT_COLLISION, EXIT_CONFIG = 0, 1, 2


def _summary(result) -> str:
    m = result.metrics
    t = f"{m.landing_time:.3f} s" if m.landing_time is not None else "-"
    clr = f"{m.min_obstacle_clearance:.3f} m" if m.min_obstacle_clearance is not None else "-"
    return (f"{m.scenario} [{m.mode}] terminal={m.terminal} landing_time={t} "
            f"end={m.end_time:.3f} s min_clearance={clr} violation_time={m.envelope_violation_time:.3f} s")


def cmd_run(args) -> int:
    cfg = load_scenario(args.scenario)
    if args.mode:
        cfg = cfg.with_mode(args.mode)
    result = run_scenario(cfg)
    print(_summary(result))
    if args.out:
        for kind, path in emit_reports(result, args.out).items():
            print(f"  {kind}: {path}")
    return EXIT_COLLISION if result.metrics.collided else EXIT_OK


def cmd_compare(args) -> int:
    cfg = load_scenario(args.scenario)
    res = compare_modes(cfg)
    for key in ("wc", "dc"):
        print(_summary(res[key]))
        if args.out:
            emit_reports(res[key], args.out)
    ratio = res["time_ratio"]
    print(f"time ratio WC/DC: {ratio:.4f}" if ratio is not None else "time ratio WC/DC: n/a (not both landed)")
    collided = res["wc"].metrics.collided or res["dc"].metrics.collided
    return EXIT_COLLISION if collided else EXIT_OK


def cmd_envelope(args) -> int:
    params = PlantParams()
    spec = LidarSpec()
    D_det = detection_range(DetectabilityModel.for_lidar(spec, args.policy_size), spec.max_range)
    a_wc = args.a_wc if args.a_wc is not None else default_worst_case(params)
    a_dc = args.a_dc if args.a_dc is not None else (params.F_max + DEFAULT_SIGMA) / params.m - params.g
    for p in write_envelope_csvs(args.out, a_wc, a_dc, args.l_max, D_det):
        print(p)
    return EXIT_OK


def cmd_detectability(args) -> int:
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    print(write_detectability_csv(out, beam_gap(LidarSpec()), args.max_distance, args.samples))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="landing-sim", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log monitor transitions")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate one scenario")
    run.add_argument("scenario", help="scenario file or built-in name")
    run.add_argument("--mode", choices=["wc", "dc"], help="override the scenario's a_max mode")
    run.add_argument("--out", help="directory for trace/metrics files")
    run.set_defaults(func=cmd_run)

    cmp_ = sub.add_parser("compare", help="run both modes and print the landing-time ratio")
    cmp_.add_argument("scenario")
    cmp_.add_argument("--out")
    cmp_.set_defaults(func=cmd_compare)

    env = sub.add_parser("envelope", help="write safe-speed envelope curves")
    env.add_argument("--out", default="envelope")
    env.add_argument("--a-wc", type=float)
    env.add_argument("--a-dc", type=float)
    env.add_argument("--l-max", type=float, default=0.15)
    env.add_argument("--policy-size", type=float, default=1.0)
    env.set_defaults(func=cmd_envelope)

    det = sub.add_parser("detectability-curve", help="write minimum detectable size vs distance")
    det.add_argument("--out", default="detectability.csv")
    det.add_argument("--max-distance", type=float, default=120.0)
    det.add_argument("--samples", type=int, default=121)
    det.set_defaults(func=cmd_detectability)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ScenarioError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
