"""Command-line front end.

Subcommands
-----------
generate   build a grown tree and write its edge list
compute    evaluate the closed forms for one (seed, op, t) and print JSON
verify     run the verification suites; nonzero exit on any failure
sweep      write the CSV (and figure) behind the mean-distance/MFPT plots
walk       simulate random walks on a tree loaded from an edge-list file

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 size
limit breached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import figures, formulas, growth, mfpt, sweeps, tree, verify, walks
from .errors import GrowthTreesError, SizeLimitExceeded
from .formulas import SeedSummary
from .growth import SUBDIVISION, GrowthOp, star_fractal

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2
EXIT_SIZE_LIMIT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the documented convention is 1.
    def error(self, message):
        raise _UsageError(message)


def parse_seed_spec(spec: str) -> tree.Tree:
    """edge | path:K | star:K | random:N:SEED | file:PATH"""
    if spec == "edge":
        return tree.single_edge()
    kind, _, rest = spec.partition(":")
    if kind == "path" and rest:
        return tree.path_tree(int(rest))
    if kind == "star" and rest:
        return tree.star_tree(int(rest))
    if kind == "random" and rest:
        n, _, seed = rest.partition(":")
        if not seed:
            raise _UsageError(f"random seed spec needs random:N:SEED, got {spec!r}")
        return tree.random_labeled_tree(int(n), int(seed))
    if kind == "file" and rest:
        return tree.read_edge_list(rest)
    raise _UsageError(f"unknown seed spec {spec!r}")


def parse_op(op_name: str, m: int | None) -> GrowthOp:
    if op_name == "subdivision":
        if m is not None:
            raise _UsageError("--m only applies to --op star-fractal")
        return SUBDIVISION
    if op_name == "star-fractal":
        if m is None:
            raise _UsageError("--op star-fractal requires --m")
        return star_fractal(m)
    raise _UsageError(f"unknown op {op_name!r}")


def _fraction_fields(value: Fraction) -> dict:
    return {
        "ratio": f"{value.numerator}/{value.denominator}",
        "decimal": sweeps.significant(value),
    }


def cmd_generate(args) -> int:
    seed = parse_seed_spec(args.seed)
    op = parse_op(args.op, args.m)
    grown = growth.grow(seed, op, args.t, vertex_limit=args.vertex_limit)
    comments = [
        f"seed: {args.seed}",
        f"op: {op.describe()}",
        f"t: {args.t}",
        f"n: {grown.n}",
        f"e: {grown.edge_count}",
    ]
    tree.write_edge_list(grown, args.out, comments)
    print(f"wrote {grown.n} vertices / {grown.edge_count} edges to {args.out}")
    return EXIT_OK


def cmd_compute(args) -> int:
    seed_tree = parse_seed_spec(args.seed)
    op = parse_op(args.op, args.m)
    summary = SeedSummary.from_tree(seed_tree)
    payload: dict = {
        "seed": {"spec": args.seed, "n": summary.n_seed, "s": str(summary.s_seed)},
        "op": op.kind,
        "m": op.leaves_per_center,
        "t": args.t,
    }
    if args.what in ("geodesic", "all"):
        report = formulas.geodesic_report(summary, op, args.t)
        payload["geodesic"] = {
            "s_exact": str(report.s_t),
            "n_t": str(report.n_t),
            "e_t": str(report.e_t),
            "avg_exact": _fraction_fields(report.avg_exact),
            "avg_approx": report.avg_approx,
        }
    if args.what in ("mfpt", "all"):
        report = mfpt.mfpt_report(summary, op, args.t)
        payload["mfpt"] = {
            "exact": _fraction_fields(report.exact),
            "theorem_approx": report.theorem_approx,
            "ratio_approx_to_exact": report.ratio,
            "gamma_theory": report.gamma_theory,
            "lambda_theory": report.lambda_theory,
        }
        if report.d_f is not None:
            payload["mfpt"]["dimensions"] = {
                "fractal": report.d_f,
                "walk": report.d_w,
                "spectral": report.d_spectral,
            }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.corpus == "small":
        cfg = verify.small_config(rng_base=args.seed_rng)
    else:
        cfg = verify.full_config(rng_base=args.seed_rng)
    cfg.fault_injection = args.inject_fault or bool(
        os.environ.get("GROWTHTREES_INJECT_FAULT")
    )
    results = verify.run_all(cfg)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {status}  ({r.checks} checks)  {r.detail}")
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} suites passed")
    # verify's documented exit is the failed-suite count, capped at 100
    return min(failed, 100)


def cmd_sweep(args) -> int:
    timings = args.timings
    if args.figure == "fig3":
        rows = sweeps.fig3_rows(t_max=args.t_max, timings=timings,
                                oracle_limit=args.oracle_limit)
        renderer = figures.render_mean_distance
    elif args.figure == "fig6":
        rows = sweeps.fig6_rows(t_max=args.t_max, trials=args.trials,
                                pair_budget=args.pair_budget,
                                rng_seed=args.rng_seed, timings=timings,
                                oracle_limit=args.oracle_limit)
        renderer = figures.render_mfpt
    else:
        seed_tree = parse_seed_spec(args.seed)
        op = parse_op(args.op, args.m)
        rows = sweeps.custom_rows(seed_tree, op, args.t_min, args.t_max,
                                  timings=timings,
                                  oracle_limit=args.oracle_limit)
        renderer = figures.render_custom
    sweeps.write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    if not args.no_plot:
        plot_path = args.plot or os.path.splitext(args.out)[0] + ".png"
        renderer(rows, plot_path)
        print(f"rendered figure to {plot_path}")
    return EXIT_OK


def cmd_walk(args) -> int:
    loaded = tree.read_edge_list(args.tree_path)
    cfg = walks.WalkConfig(trials=args.trials, max_steps=args.max_steps,
                           rng_seed=args.seed)
    if args.mfpt:
        estimate = walks.monte_carlo_mfpt(loaded, cfg, pair_budget=args.pair_budget)
        mode = {"mode": "mfpt", "pair_budget": args.pair_budget}
    else:
        if args.source is None or args.target is None:
            raise _UsageError("walk needs --source and --target, or --mfpt")
        estimate = walks.monte_carlo_fpt(loaded, args.source, args.target, cfg)
        mode = {"mode": "fpt", "source": args.source, "target": args.target}
    payload = {
        **mode,
        "n": loaded.n,
        "trials": args.trials,
        "max_steps": args.max_steps,
        "rng_seed": args.seed,
        "mean_steps": estimate.mean_steps,
        "stderr": estimate.stderr,
        "completed": estimate.completed,
        "truncated": estimate.truncated,
        "biased_low": estimate.biased_low,
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="growthtrees",
                     description="Grown trees: exact distance sums, MFPT, oracles")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_seed_op(p, with_t=True):
        p.add_argument("--seed", required=True,
                       help="edge | path:K | star:K | random:N:SEED | file:PATH")
        p.add_argument("--op", required=True,
                       choices=["subdivision", "star-fractal"])
        p.add_argument("--m", type=int, default=None,
                       help="leaves per inserted center (star-fractal only)")
        if with_t:
            p.add_argument("--t", type=int, required=True, help="growth steps")

    gen = sub.add_parser("generate", help="grow a tree and write its edge list")
    add_seed_op(gen)
    gen.add_argument("--out", required=True)
    gen.add_argument("--vertex-limit", type=int,
                     default=growth.DEFAULT_VERTEX_LIMIT)
    gen.set_defaults(func=cmd_generate)

    comp = sub.add_parser("compute", help="evaluate closed forms, print JSON")
    add_seed_op(comp)
    comp.add_argument("--what", choices=["geodesic", "mfpt", "all"], default="all")
    comp.set_defaults(func=cmd_compute)

    ver = sub.add_parser("verify", help="run the verification suites")
    ver.add_argument("--corpus", choices=["small", "full"], default="small")
    ver.add_argument("--seed-rng", type=int, default=0,
                     help="base seed for the random corpus trees")
    ver.add_argument("--inject-fault", action="store_true",
                     help="negative control: perturb one formula and expect failure")
    ver.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", help="tabulate sweeps as CSV plus a figure")
    group = sw.add_mutually_exclusive_group(required=True)
    group.add_argument("--figure", choices=["fig3", "fig6"])
    group.add_argument("--custom", action="store_true")
    sw.add_argument("--seed", help="seed spec (custom sweeps)")
    sw.add_argument("--op", choices=["subdivision", "star-fractal"])
    sw.add_argument("--m", type=int, default=None)
    sw.add_argument("--t-min", type=int, default=0)
    sw.add_argument("--t-max", type=int, default=5)
    sw.add_argument("--trials", type=int, default=1000)
    sw.add_argument("--pair-budget", type=int, default=60)
    sw.add_argument("--rng-seed", type=int, default=0)
    sw.add_argument("--oracle-limit", type=int, default=sweeps.ORACLE_VERTEX_LIMIT)
    sw.add_argument("--out", required=True)
    sw.add_argument("--plot", default=None,
                    help="figure path (default: CSV path with .png)")
    sw.add_argument("--no-plot", action="store_true")
    sw.add_argument("--timings", action="store_true",
                    help="fill the elapsed_ms columns (breaks byte-stable output)")
    sw.set_defaults(func=cmd_sweep)

    wk = sub.add_parser("walk", help="Monte Carlo random walks on a stored tree")
    wk.add_argument("tree_path")
    wk.add_argument("--source", type=int, default=None)
    wk.add_argument("--target", type=int, default=None)
    wk.add_argument("--mfpt", action="store_true")
    wk.add_argument("--trials", type=int, default=10_000)
    wk.add_argument("--seed", type=int, default=0)
    wk.add_argument("--max-steps", type=int, default=1_000_000)
    wk.add_argument("--pair-budget", type=int, default=200)
    wk.set_defaults(func=cmd_walk)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sweep" and args.custom:
            if not args.seed or not args.op:
                raise _UsageError("--custom sweeps need --seed and --op")
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE_LIMIT
    except (GrowthTreesError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
