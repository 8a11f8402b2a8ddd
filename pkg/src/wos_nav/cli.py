"""wos-nav command line: run experiments, re-plot records, solve points.

    wos-nav run <spec.cfg> [--out DIR] [--seed S] [--workers W]
    wos-nav plot <record> --kind {path_overlay,loglog,box_timing}
    wos-nav solve --scene FILE --point X --walks N --screening C [--gradient]

`record` is a manifest.json or the directory holding one.  --point takes
comma-separated coordinates.  Worker counts resolve as: --workers flag,
else the WOS_NAV_WORKERS environment variable, else 1.  Exit status is 0
on success and 2 on any error, with a diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .bench import (build_scene, emit_plot, load_record, parse_config,
                    run_experiment, spec_from_config)
from .bench.config import as_float, as_int
from .solver import BoundarySpec, SourceSpec, WalkConfig, solve_gradient, solve_value


def _env_workers() -> int:
    raw = os.environ.get("WOS_NAV_WORKERS", "")
    return int(raw) if raw.strip() else 1


def _cmd_run(args) -> int:
    cfg = parse_config(args.spec)
    spec = spec_from_config(cfg, out_dir=args.out, seed=args.seed)
    workers = args.workers if args.workers is not None else _env_workers()
    record = run_experiment(spec, workers=workers)
    print(f"wrote {len(record.files)} artifacts to {record.out_dir}")
    for role in sorted(record.files):
        print(f"  {role}: {record.files[role]}")
    return 0


def _cmd_plot(args) -> int:
    record = load_record(args.record)
    fname = emit_plot(record, args.kind)
    print(fname)
    return 0


def _cmd_solve(args) -> int:
    scene = build_scene(parse_config(args.scene))
    cfg_file = parse_config(args.scene)
    point = np.array([float(tok) for tok in args.point.split(",")])
    walk = WalkConfig(epsilon=as_float(cfg_file, "epsilon", 0.01),
                      n_walks=args.walks, screening=args.screening,
                      seed=as_int(cfg_file, "seed", 0))
    bc = BoundarySpec(0.0)
    src = SourceSpec.dirac(scene.goal)
    workers = _env_workers()
    if args.gradient:
        est = solve_gradient(scene.field, bc, src, walk, point, workers=workers)
        vec = " ".join(f"{v:.10g}" for v in est.mean)
        err = " ".join(f"{math.sqrt(v / est.n_samples):.3g}"
                       for v in est.sample_variance)
        print(f"gradient: {vec}")
        print(f"stderr:   {err}")
    else:
        est = solve_value(scene.field, bc, src, walk, point, workers=workers)
        stderr = math.sqrt(est.sample_variance / est.n_samples)
        print(f"value:  {est.mean:.10g}")
        print(f"stderr: {stderr:.3g}")
    print(f"walks: {est.n_samples}  mean steps: {est.mean_steps_per_walk:.2f}  "
          f"truncated: {est.n_truncated}  wall: {est.wall_time:.3f}s")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wos-nav",
        description="Monte Carlo screened-potential experiments and solves")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment spec file")
    p_run.add_argument("spec", help="experiment config file")
    p_run.add_argument("--out", default=None, help="output directory override")
    p_run.add_argument("--seed", type=int, default=None,
                       help="base seed override (rederives the seed list)")
    p_run.add_argument("--workers", type=int, default=None,
                       help="worker processes (default WOS_NAV_WORKERS or 1)")
    p_run.set_defaults(func=_cmd_run)

    p_plot = sub.add_parser("plot", help="re-emit a figure from a run record")
    p_plot.add_argument("record", help="manifest.json or its directory")
    p_plot.add_argument("--kind", required=True,
                        choices=["path_overlay", "loglog", "box_timing"])
    p_plot.set_defaults(func=_cmd_plot)

    p_solve = sub.add_parser("solve", help="estimate the potential at a point")
    p_solve.add_argument("--scene", required=True, help="scene config file")
    p_solve.add_argument("--point", required=True,
                         help="comma-separated coordinates")
    p_solve.add_argument("--walks", required=True, type=int)
    p_solve.add_argument("--screening", required=True, type=float)
    p_solve.add_argument("--gradient", action="store_true",
                         help="estimate the gradient instead of the value")
    p_solve.set_defaults(func=_cmd_solve)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # argparse handles its own usage errors
        print(f"wos-nav: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
