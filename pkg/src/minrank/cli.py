"""Command-line entry point: ``minrank <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import graph as graphs
from .bounds import (
    DEFAULT_COLOR_EXACT_N,
    DEFAULT_EXACT_BUDGET,
    DEFAULT_INDSET_EXACT_N,
    InvariantViolation,
    clique_cover_upper_bound,
    compute_bounds,
    exact_minrank,
)
from .codec import BudgetExceededError
from .experiments import (
    SCALING_TIME_COLUMNS,
    ScalingConfig,
    concentration_row,
    derive_seed,
    run_concentration,
    run_scaling,
    run_shift_scan,
    write_csv,
)
from .field import FieldSpec
from .indexcode import build_code, simulate
from .matrix import rank
from .verify import SUITES, corollary32_rows, run_verify


def probability(text: str) -> float:
    """Accept decimals or fractions such as ``4/2000``."""
    try:
        value = float(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1]: {text}")
    return value


def field_order(text: str) -> FieldSpec:
    try:
        return FieldSpec(int(text))
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _out(args):
    return args.out if args.out else sys.stdout


def _read_graph(args):
    if args.graph_in is None or args.graph_in == "-":
        return graphs.read_edge_list(sys.stdin)
    return graphs.read_edge_list(args.graph_in)


def _dump_json(path: str, payload):
    with open(path, "w", encoding="ascii") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------- subcommands


def cmd_sample(args) -> int:
    G = graphs.sample_gnp(args.n, args.p, args.seed)
    graphs.write_edge_list(G, args.graph_out if args.graph_out else sys.stdout)
    return 0


@dataclass
class BoundsRow:
    n: int
    arc_count: int
    q: int
    lower_sparsity: int
    lower_indset: int
    indset_method: str
    upper_clique_cover: int
    cover_method: str
    exact: Optional[int]
    exact_status: str


def cmd_bounds(args) -> int:
    G = _read_graph(args)
    rep = compute_bounds(
        G,
        args.field,
        exact_budget=args.exact_budget,
        indset_exact_n=args.indset_exact_n,
        color_exact_n=args.color_exact_n,
        time_limit=args.time_limit,
    )
    row = BoundsRow(
        rep.n, rep.arc_count, rep.q, rep.lower_sparsity, rep.lower_indset, rep.indset_method,
        rep.upper_clique_cover, rep.cover_method, rep.exact, rep.exact_status,
    )
    write_csv([row], _out(args))
    if args.witness_out:
        _dump_json(args.witness_out, {
            "independent_set": rep.independent_set,
            "coloring": rep.coloring.tolist(),
            "cover_witness": rep.cover_witness.tolist(),
            "exact_witness": None if rep.exact_witness is None else rep.exact_witness.tolist(),
        })
    return 0


@dataclass
class ExactRow:
    n: int
    arc_count: int
    q: int
    minrank: int


def cmd_exact(args) -> int:
    G = _read_graph(args)
    res = exact_minrank(G, args.field, args.exact_budget, pin_diagonal=args.pin_diagonal)
    write_csv([ExactRow(G.n, G.arc_count, args.field.q, res.value)], _out(args))
    if args.witness_out:
        _dump_json(args.witness_out, {"witness": res.witness.tolist()})
    return 0


@dataclass
class SimulateRow:
    n: int
    q: int
    code: str
    broadcast_length: int
    naive_length: int
    trials: int
    decodes: int
    successes: int


def cmd_simulate(args) -> int:
    G = _read_graph(args)
    code_kind = args.code
    M = None
    if code_kind in ("auto", "exact"):
        try:
            M = exact_minrank(G, args.field, args.exact_budget).witness
            code_kind = "exact"
        except BudgetExceededError:
            if args.code == "exact":
                raise
    if M is None:
        M = clique_cover_upper_bound(G, field=args.field).witness
        code_kind = "cover"
    code = build_code(G, M)
    rng = np.random.default_rng(args.seed)
    xs = rng.integers(0, args.field.q, size=(args.trials, G.n))
    ok = simulate(code, G, xs)
    total = args.trials * G.n
    write_csv([SimulateRow(G.n, args.field.q, code_kind, code.k, G.n, args.trials, total, ok)], _out(args))
    if code.k != rank(M):
        raise InvariantViolation("broadcast length differs from the rank of the matrix")
    return 0 if ok == total else 1


def cmd_scaling(args) -> int:
    cfg = ScalingConfig(
        p=args.p,
        trials=args.trials,
        seed=args.seed,
        q=args.field.q,
        exact_budget=args.exact_budget,
        indset_exact_n=args.indset_exact_n,
        color_exact_n=args.color_exact_n,
        time_limit=args.time_limit,
        timings=args.timings,
    )
    rows = run_scaling(args.n, cfg, jobs=args.jobs)
    write_csv(rows, _out(args), SCALING_TIME_COLUMNS)
    return 0


@dataclass
class TrialValue:
    trial: int
    seed: int
    upper_clique_cover: int


def cmd_concentration(args) -> int:
    rep = run_concentration(args.n, args.p, args.trials, args.seed, args.field, args.fixed_seed)
    write_csv([concentration_row(rep)], _out(args))
    if args.per_trial_out:
        write_csv([
            TrialValue(t, args.seed if args.fixed_seed else derive_seed(args.seed, args.n, args.p, t), v)
            for t, v in enumerate(rep.values)
        ], args.per_trial_out)
    return 1 if rep.flagged else 0


def cmd_shifts(args) -> int:
    if args.graph_in is not None:
        G = _read_graph(args)
    elif args.n is not None and args.out_degree is not None:
        G = graphs.sample_out_regular(args.n, args.out_degree, args.seed)
    else:
        raise SystemExit("shifts needs --graph-in, or --n with --out-degree")
    scan = run_shift_scan(
        G, args.field, args.exact_budget, args.indset_exact_n, args.color_exact_n, args.time_limit
    )
    write_csv(scan.rows, _out(args))
    print(f"# max lower bound over shifts: {scan.max_lower}; min upper bound: {scan.min_upper}",
          file=sys.stderr)
    return 0


@dataclass
class CorollaryRow:
    k: int
    s: int
    count: int
    bound: int


def cmd_verify(args) -> int:
    if args.suite == "corollary32" and args.n is not None:
        rows = [CorollaryRow(*r) for r in corollary32_rows(args.n, args.field.q)]
        write_csv(rows, _out(args))
        bad = [r for r in rows if r.count > r.bound]
        print(f"corollary32: {'FAIL' if bad else 'PASS'} ({len(rows)} checked)", file=sys.stderr)
        return 1 if bad else 0
    result = run_verify(args.suite, args.seed)
    print(result.line())
    return 0 if result.passed else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minrank", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, graph_in=False, exact_budget=None, out=True):
        p.add_argument("--field", type=field_order, default=FieldSpec(2), help="prime field order q (default 2)")
        p.add_argument("--seed", type=int, default=0)
        if out:
            p.add_argument("--out", help="CSV output file (default stdout)")
        if graph_in:
            p.add_argument("--graph-in", help="edge-list file ('-' or omitted: stdin)")
        p.add_argument("--exact-budget", type=int, default=exact_budget,
                       help="max matrices enumerated by the exact minrank search")

    def bb(p):
        p.add_argument("--indset-exact-n", type=int, default=DEFAULT_INDSET_EXACT_N,
                       help="exact independent set up to this many vertices")
        p.add_argument("--color-exact-n", type=int, default=DEFAULT_COLOR_EXACT_N,
                       help="exact clique cover up to this many vertices")
        p.add_argument("--time-limit", type=float, default=60.0, help="seconds per bound")

    p = sub.add_parser("sample", help="sample G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=probability, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--graph-out", help="edge-list file (default stdout)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bounds", help="lower/upper bounds for one graph")
    common(p, graph_in=True)
    bb(p)
    p.add_argument("--witness-out", help="JSON dump of the certificates")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exact", help="exact minrank by exhaustive search")
    common(p, graph_in=True, exact_budget=DEFAULT_EXACT_BUDGET)
    p.add_argument("--pin-diagonal", action="store_true", help="fix the diagonal to 1 (q > 2)")
    p.add_argument("--witness-out", help="JSON dump of a minimum-rank representing matrix")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("simulate", help="broadcast and decode with a linear index code")
    common(p, graph_in=True, exact_budget=DEFAULT_EXACT_BUDGET)
    p.add_argument("--trials", type=int, default=100, help="random messages")
    p.add_argument("--code", choices=("auto", "exact", "cover"), default="auto")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scaling", help="bounds on G(n, p) over sizes and trials")
    common(p, exact_budget=DEFAULT_EXACT_BUDGET)
    bb(p)
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--p", type=probability, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timings", action="store_true", help="fill the wall-time columns")
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("concentration", help="spread of the clique-cover bound")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=probability, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--fixed-seed", action="store_true", help="reuse --seed for every trial")
    p.add_argument("--per-trial-out", help="CSV of per-trial values")
    p.set_defaults(func=cmd_concentration)

    p = sub.add_parser("shifts", help="bounds for every cyclic shift of a graph (exploratory)")
    common(p, graph_in=True)
    bb(p)
    p.add_argument("--n", type=int, help="sample an out-regular graph on n vertices")
    p.add_argument("--out-degree", type=int)
    p.set_defaults(func=cmd_shifts)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, help="corollary32 only: print the count table for this n")
    p.add_argument("--field", type=field_order, default=FieldSpec(2))
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: over budget: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
