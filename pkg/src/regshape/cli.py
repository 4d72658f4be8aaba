"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import experiments, shaking, shapes
from .partitions import format_partition, parse_partition, regularise
from .plancherel import sample
from .profile import profile_csv, profile_of, uniform_grid


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {output}: {exc}") from exc


def _base(name: str) -> shapes.ShapeFunction:
    return {"omega": shapes.Omega, "sigma": shapes.Sigma}[name]()


def _alpha(args) -> float:
    if args.alpha is not None:
        return args.alpha
    if args.e is None:
        raise ValueError("give --alpha or --e")
    return shapes.alpha_of_e(args.e)


def cmd_sample(args) -> None:
    lam = sample(args.n, args.seed)
    if args.e is not None:
        lam = regularise(lam, args.e)
    _emit(format_partition(lam) + "\n", args.output)


def cmd_regularise(args) -> None:
    _emit(format_partition(regularise(args.partition, args.e)) + "\n", args.output)


def cmd_profile(args) -> None:
    _emit(profile_csv(profile_of(args.partition), rescaled=args.rescaled), args.output)


def cmd_limitshape(args) -> None:
    sh = shapes.ShakenShape(_base(args.base), _alpha(args))
    if args.curve is not None:
        lo, hi = args.window
        shapes.write_curve_csv(sh, uniform_grid(lo, hi, args.grid_step), args.curve)
    if args.output is None:
        sys.stdout.write(json.dumps(sh.landmarks(), indent=2) + "\n")
    else:
        shapes.write_landmarks_json(sh, args.output)


def cmd_shake(args) -> None:
    if args.equivalence is not None:
        if args.partition is None or args.e is None:
            raise ValueError("--equivalence needs --partition and --e")
        report = shaking.shake_equivalence_check(args.partition, args.e, args.grid_step)
        shaking.write_report_json(report, args.equivalence)
        if not report["pass"]:
            raise ValueError(f"shake equivalence failed: {report}")
        return
    if args.flatten is not None:
        if args.partition is None or args.e is None:
            raise ValueError("--flatten needs --partition and --e")
        p = profile_of(args.partition)
        flatten = shaking.flatten_outer if args.flatten == "outer" else shaking.flatten_inner
        curve = flatten(p, args.e)
    else:
        alpha = _alpha(args)
        if args.partition is not None:
            g = shaking.profile_curve(profile_of(args.partition))
            lo = -(args.partition.parts[0] if args.partition.parts else 0) - 1.0
        else:
            g = _base(args.base)
            lo = -g.a - 0.5
        grid = np.arange(lo, 0.5 * args.grid_step, args.grid_step)
        curve = shaking.discrete_shake(g, alpha, grid)
    _emit(curve.csv_text(), args.output)


def cmd_experiment(args) -> None:
    if args.config is not None:
        cfg = experiments.ExperimentConfig.from_json(args.config)
    else:
        if args.e is None or args.n is None:
            raise ValueError("give --config or both --e and --n")
        cfg = experiments.ExperimentConfig(
            e=args.e,
            n_values=tuple(args.n),
            trials=args.trials,
            seed=args.seed,
            grid_step=args.grid_step,
            window=tuple(args.window),
            output_dir=args.output_dir,
            workers=args.workers,
            record_timing=args.record_timing,
        )
    result = experiments.run_experiment(cfg)
    print(f"wrote {result.csv_path} and {result.summary_path}")


def cmd_figure(args) -> None:
    from .svg import emit_figure

    if args.partition is not None:
        lam = args.partition
    elif args.n is not None:
        lam = sample(args.n, args.seed)
    else:
        raise ValueError("give --partition or --n")
    emit_figure(lam, args.e, args.output, tuple(args.window))
    print(f"wrote {args.output}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regshape", description="Regularised partitions, Plancherel sampling and shaken limit shapes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a Plancherel-random partition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--e", type=int, help="print its e-regularisation instead")
    p.add_argument("--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("regularise", help="e-regularise a partition such as 4,4,2,1")
    p.add_argument("--partition", type=_partition_arg, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_regularise)

    p = sub.add_parser("profile", help="write the profile breakpoints as CSV")
    p.add_argument("--partition", type=_partition_arg, required=True)
    p.add_argument("--rescaled", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("limitshape", help="landmarks (JSON) and curve (CSV) of a shaken shape")
    p.add_argument("--e", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--base", choices=("omega", "sigma"), default="omega")
    p.add_argument("--curve", help="CSV path for x,f,sh_f rows")
    p.add_argument("--grid-step", type=float, default=1e-2)
    p.add_argument("--window", type=float, nargs=2, default=(-3.0, 3.0))
    p.add_argument("--output", help="JSON path for the landmarks")
    p.set_defaults(func=cmd_limitshape)

    p = sub.add_parser("shake", help="discrete shaking, flattenings, or the regularisation check")
    p.add_argument("--partition", type=_partition_arg)
    p.add_argument("--base", choices=("omega", "sigma"), default="omega")
    p.add_argument("--e", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--grid-step", type=float, default=1e-2)
    p.add_argument("--flatten", choices=("outer", "inner"))
    p.add_argument("--equivalence", metavar="REPORT_JSON")
    p.add_argument("--output")
    p.set_defaults(func=cmd_shake)

    p = sub.add_parser("experiment", help="Monte Carlo convergence run")
    p.add_argument("--config", help="JSON file with ExperimentConfig keys")
    p.add_argument("--e", type=int)
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-step", type=float, default=1e-3)
    p.add_argument("--window", type=float, nargs=2, default=(-3.0, 3.0))
    p.add_argument("--output-dir", default="results")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--record-timing", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("figure", help="SVG of a regularised profile against the limit shapes")
    p.add_argument("--partition", type=_partition_arg)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--window", type=float, nargs=2, default=(-3.0, 3.0))
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_figure)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"regshape {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0
