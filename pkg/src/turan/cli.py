"""Command-line interface: ``turan build|verify|lemma|table|suite``.

Exit codes: 0 success (graph free, lemma bound holds), 1 a checked claim
failed, 2 bad parameters or budget exceeded, 3 I/O or malformed input.
"""

from __future__ import annotations

import argparse
import sys

from .errors import HypothesisViolated, MalformedFile, TuranError
from .field import make_field
from .graph import build_graph, count_edges, export_graph, import_graph
from .report import FAMILIES, bounds_row, family_params, format_csv, format_table
from .verify import (
    DEFAULT_BUDGET,
    DEFAULT_SAMPLES,
    certify_kab_free,
    default_workers,
    theorem_suite,
    verify_lemma_AG,
    verify_lemma_L,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_build(args) -> int:
    try:
        G = build_graph(make_field(args.p, args.k), args.t)
    except HypothesisViolated as exc:
        return _fail(EXIT_USAGE, f"{type(exc).__name__}: {exc}")
    if args.out:
        try:
            export_graph(G, args.out, dimacs=args.dimacs)
        except OSError as exc:
            return _fail(EXIT_IO, str(exc))
    print(f"n={G.n} m={count_edges(G)} loops={G.loop_count}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        G = import_graph(args.graph)
    except (OSError, MalformedFile) as exc:
        return _fail(EXIT_IO, f"{type(exc).__name__}: {exc}")
    try:
        cert = certify_kab_free(G, args.a, args.b, workers=args.workers, budget=args.budget)
    except TuranError as exc:
        return _fail(EXIT_USAGE, f"{type(exc).__name__}: {exc}")
    print(cert.record())
    return EXIT_OK if cert.free else EXIT_FAIL


def cmd_lemma(args) -> int:
    try:
        if args.lemma == "l":
            report = verify_lemma_L(args.q)
        else:
            if args.r is None:
                return _fail(EXIT_USAGE, "lemma ag needs --r")
            report = verify_lemma_AG(args.q, args.r, args.mode, sample_size=args.samples,
                                     seed=args.seed, budget=args.budget)
    except TuranError as exc:
        return _fail(EXIT_USAGE, f"{type(exc).__name__}: {exc}")
    print(report.record())
    ok = report.holds and report.quadratic_agrees is not False
    return EXIT_OK if ok else EXIT_FAIL


def cmd_table(args) -> int:
    if not args.q:
        return _fail(EXIT_USAGE, "table needs at least one --q value")
    try:
        t, r = family_params(args.family, args.t, args.r)
    except HypothesisViolated as exc:
        return _fail(EXIT_USAGE, str(exc))
    rows, failed = [], False
    for q in args.q:
        try:
            rows.append(bounds_row(q, t, r))
        except TuranError as exc:
            failed = True
            print(f"error: row q={q}: {type(exc).__name__}: {exc}", file=sys.stderr)
    sys.stdout.write(format_table(rows))
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(format_csv(rows))
        except OSError as exc:
            return _fail(EXIT_IO, str(exc))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_suite(args) -> int:
    try:
        entries = theorem_suite(args.q, args.t, args.r, workers=args.workers,
                                budget=args.budget, samples=args.samples, seed=args.seed)
    except HypothesisViolated as exc:
        return _fail(EXIT_USAGE, f"{type(exc).__name__}: {exc}")
    for entry in entries:
        print(entry.record())
    return EXIT_FAIL if any(e.status == "fail" for e in entries) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="turan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def search_opts(p):
        p.add_argument("--workers", type=int, default=default_workers())
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="max subsets / systems scanned")

    p = sub.add_parser("build", help="construct G(p^k, t) and optionally write it")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out", help="graph file to write")
    p.add_argument("--dimacs", action="store_true", help="write DIMACS instead")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="certify a graph file K_{a,b}-free")
    p.add_argument("graph")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    search_opts(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemma", help="run a lemma oracle")
    p.add_argument("lemma", choices=["l", "ag"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("table", help="tabulate m / n^(2-1/r) against the target constant")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--q", type=int, nargs="*", default=[])
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--csv", help="also write the rows as CSV")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("suite", help="certify every theorem instance at (q, t, r)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    search_opts(p)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def entry_point():
    sys.exit(main())
