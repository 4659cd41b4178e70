"""Command-line front end.

Exit codes: 0 on success (negative verdicts included), 1 when ``witness
--verify`` rejects a witness, 2 on invalid input, 3 when an enumeration or
memory budget runs out.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Optional, Sequence, TextIO

from .amoroso import decide_injective_table
from .decisions import PROPERTIES, decide
from .injectivity import decide_surjective_periodic
from .memory import MIB, MemoryBudgetExceeded
from .oracle import BudgetExceeded, WitnessError, verify_witness
from .rules import (
    PERIODIC,
    UNBOUNDED,
    RuleError,
    extend_to_symmetric,
    format_boundary,
    parse_boundary,
    parse_rule,
    print_rule,
)
from .survey import (
    PUBLISHED_COUNTS,
    EnumerationBudgetExceeded,
    bench_compare,
    node_stats,
    records_to_jsonl,
    rows_to_csv,
    survey_counts,
)
from .verdict import INJECTIVE, SURJECTIVE, Verdict, witness_to_json

EXIT_OK, EXIT_REJECTED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True)


def _add_format(parser, choices=("human", "json", "csv"), default="human"):
    parser.add_argument("--format", choices=choices, default=default)
    parser.add_argument("--no-timing", action="store_true",
                        help="omit wall-clock fields so output is byte-stable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="careverse",
        description="Decide surjectivity and injectivity of one-dimensional cellular automata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide one property of one rule")
    p.add_argument("rule", help='rule spec, e.g. "p=2;L=1;R=1;rule=01100110"')
    p.add_argument("--property", choices=PROPERTIES, default=SURJECTIVE)
    p.add_argument("--boundary", default="global",
                   help="global | null | fixed:<left>:<right> | periodic | reflective")
    p.add_argument("--algorithm", choices=("tree", "table"), default="tree",
                   help="table: sequent-table baseline (global injectivity only)")
    p.add_argument("--memory-budget", type=float, default=512.0, metavar="MIB")
    p.add_argument("--short-circuit", action="store_true",
                   help="reject unbalanced rules before building the injectivity tree")
    p.add_argument("--continue-past-periodic", action="store_true",
                   help="periodic surjectivity: ignore periodic-pair terminations")
    _add_format(p, ("human", "json"))

    p = sub.add_parser("survey", help="count qualifying rules over a whole rule space")
    p.add_argument("--m", type=int, help="neighborhood size")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--left", type=int, help="left radius (default: (m-1)//2)")
    p.add_argument("--boundary", default="null",
                   help="null | fixed | fixed:<left>:<right> | periodic | reflective | global")
    p.add_argument("--property", choices=PROPERTIES, default=SURJECTIVE)
    p.add_argument("--published", action="store_true", help="run every published survey row")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--plot", metavar="PATH", help="also write a bar chart")
    _add_format(p)

    p = sub.add_parser("bench", help="time the injectivity tree against the sequent table")
    p.add_argument("--m", type=int, nargs="+", required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--sample", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--warmup", type=int, default=10)
    p.add_argument("--memory-budget", type=float, default=512.0, metavar="MIB")
    p.add_argument("--time-budget", type=float, metavar="SECONDS")
    p.add_argument("--node-stats", action="store_true",
                   help="emit tuple-count statistics instead of timings")
    p.add_argument("--plot", metavar="PATH", help="also write a figure")
    _add_format(p, ("human", "json", "csv"), default="json")

    p = sub.add_parser("witness", help="emit or verify a witness")
    p.add_argument("rule", nargs="?")
    p.add_argument("--property", choices=PROPERTIES, default=SURJECTIVE)
    p.add_argument("--boundary", default="global")
    p.add_argument("--verify", metavar="FILE", help="verdict JSON to check ('-' for stdin)")

    p = sub.add_parser("extend", help="pad a rule to a symmetric neighborhood")
    p.add_argument("rule")
    _add_format(p, ("human", "json"))
    return parser


def _decide(args, out: TextIO) -> int:
    rule = parse_rule(args.rule)
    boundary = parse_boundary(args.boundary, rule)
    boundary.check(rule)
    start = time.perf_counter()
    if args.algorithm == "table":
        if args.property != INJECTIVE or boundary.kind not in (UNBOUNDED, PERIODIC):
            raise RuleError("the table baseline decides global injectivity only")
        verdict = decide_injective_table(rule, memory_budget=int(args.memory_budget * MIB))
        verdict.boundary = boundary
    elif args.continue_past_periodic:
        if args.property != SURJECTIVE or boundary.kind != PERIODIC:
            raise RuleError("--continue-past-periodic applies to periodic surjectivity")
        verdict = decide_surjective_periodic(rule, continue_past_periodic=True)
    else:
        verdict = decide(rule, args.property, boundary, short_circuit=args.short_circuit)
    elapsed = time.perf_counter() - start
    if args.format == "json":
        data = verdict.to_json()
        data["algorithm"] = args.algorithm
        if not args.no_timing:
            data["elapsed_seconds"] = elapsed
        out.write(_dump(data) + "\n")
    else:
        out.write(f"{print_rule(rule)}  {format_boundary(boundary)}  {verdict.label}\n")
        if verdict.witness is not None:
            out.write(f"witness: {_dump(witness_to_json(verdict.witness))}\n")
        if verdict.note:
            out.write(f"note: {verdict.note}\n")
    return EXIT_OK


def _survey(args, out: TextIO) -> int:
    if args.published:
        jobs = [(m, b, SURJECTIVE, None) for m, b, _ in PUBLISHED_COUNTS]
    elif args.m is None:
        raise RuleError("survey needs --m or --published")
    else:
        jobs = [(args.m, args.boundary, args.property, args.left)]
    rows = [survey_counts(m, args.p, boundary, prop, left=left, workers=args.workers)
            for m, boundary, prop, left in jobs]
    timing = not args.no_timing
    if args.format == "csv":
        out.write(rows_to_csv(rows, timing))
    elif args.format == "json":
        for row in rows:
            data = {"m": row.m, "boundary": row.boundary, "property": row.property,
                    "count": row.count, "total": row.total, "shape": list(row.shape),
                    "rules": row.rules}
            if timing:
                data["seconds"] = row.seconds
            out.write(_dump(data) + "\n")
    else:
        for row in rows:
            shape = f"{row.shape[0]}+1+{row.shape[1]}"
            out.write(f"m={row.m} ({shape})  {row.boundary:<12} {row.property:<10} "
                      f"{row.count}/{row.total}\n")
    if args.plot:
        from .plotting import plot_survey
        plot_survey(rows, args.plot)
    return EXIT_OK


def _bench(args, out: TextIO) -> int:
    budget = int(args.memory_budget * MIB)
    timing = not args.no_timing
    if args.node_stats:
        stats = [node_stats(m, args.p, args.sample, args.seed) for m in args.m]
        for s in stats:
            if args.format == "human":
                out.write(f"m={s.m}  sample={s.sample}  mean tuples={s.mean_tuples:.1f}  "
                          f"bound={s.bound}  below={s.below_bound}\n")
            else:
                out.write(_dump(s.to_json()) + "\n")
        if args.plot:
            from .plotting import plot_node_stats
            plot_node_stats(stats, args.plot)
        return EXIT_OK
    records = [bench_compare(m, args.p, args.sample, args.seed, args.time_budget, budget,
                             args.warmup) for m in args.m]
    if args.format == "json":
        out.write(records_to_jsonl(records, timing))
    elif args.format == "csv":
        fields = list(records[0].to_json(timing))
        out.write(",".join(fields) + "\n")
        for record in records:
            data = record.to_json(timing)
            out.write(",".join("" if data[f] is None else str(data[f]) for f in fields) + "\n")
    else:
        for r in records:
            ratio = f"{r.ratio:.2f}" if r.ratio else "-"
            table = f"{r.table_mean_ms:.3f}" if r.table_mean_ms is not None else "out of memory"
            tree = f"{r.tree_mean_ms:.3f}" if r.tree_mean_ms is not None else "-"
            out.write(f"m={r.m}  n={r.sample}  table={table} ms  tree={tree} ms  "
                      f"ratio={ratio}  disagreements={r.disagreements}\n")
    if args.plot:
        from .plotting import plot_bench
        plot_bench(records, args.plot)
    return EXIT_OK


def _witness(args, out: TextIO, stdin: TextIO) -> int:
    if args.verify:
        text = stdin.read() if args.verify == "-" else open(args.verify).read()
        try:
            verdict = Verdict.from_json(json.loads(text))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise RuleError(f"malformed verdict JSON: {exc}") from exc
        ok = verify_witness(verdict)
        out.write(_dump({"verified": ok, "kind": witness_to_json(verdict.witness)["kind"]}) + "\n")
        return EXIT_OK if ok else EXIT_REJECTED
    if not args.rule:
        raise RuleError("witness needs a rule or --verify")
    rule = parse_rule(args.rule)
    verdict = decide(rule, args.property, parse_boundary(args.boundary, rule))
    data = {"label": verdict.label, "witness": witness_to_json(verdict.witness)}
    if verdict.witness is not None:
        data["verified"] = verify_witness(verdict)
    out.write(_dump(data) + "\n")
    return EXIT_OK


def _extend(args, out: TextIO) -> int:
    rule = parse_rule(args.rule)
    extended = extend_to_symmetric(rule)
    if args.format == "json":
        out.write(_dump({"rule": print_rule(rule), "extended": print_rule(extended),
                         "left": extended.left, "right": extended.right}) + "\n")
    else:
        out.write(print_rule(extended) + "\n")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None,
        err: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    handlers = {"decide": _decide, "survey": _survey, "bench": _bench, "extend": _extend}
    try:
        if args.command == "witness":
            return _witness(args, out, stdin)
        return handlers[args.command](args, out)
    except (BudgetExceeded, MemoryBudgetExceeded, EnumerationBudgetExceeded) as exc:
        err.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    except (RuleError, WitnessError, ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
