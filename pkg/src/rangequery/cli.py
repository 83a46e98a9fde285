"""Command-line entry point: ``rangequery {gen,build,query,fuzz,bench}``.

Exit status is 0 on success, 1 when fuzzing finds a mismatch and 2 for
usage, parse and I/O errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import rows_to_csv, run_bench
from .core import ProbeCounter, RangeQueryError
from .formats import (ALL_KINDS, TREE_KINDS, build_index, format_list, format_tree, is_tree_index, load_index,
                      parse_list, parse_queries, parse_tree, save_index)
from .fuzz import DEFAULT_SIZES, run_fuzz
from .instances import TREE_SHAPES, make_tree, random_list

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _kind_list(text: str) -> list[str]:
    kinds = [t.strip() for t in text.split(",") if t.strip()]
    if "all" in kinds:
        return list(ALL_KINDS)
    bad = [k for k in kinds if k not in ALL_KINDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown kind(s): {', '.join(bad)}")
    return kinds


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, help="tradeoff exponent for mode-tradeoff / mode-tree, in (0, 1/2]")
    p.add_argument("--blocks", type=int, help="number of blocks (mode-tradeoff, mode-tree, median-block)")
    p.add_argument("--k", type=int, help="block size for mode-constant / median-constant")
    p.add_argument("--arity", type=int, help="range tree arity for median-range-tree")


def _params(args) -> dict:
    return {"epsilon": args.epsilon, "blocks": args.blocks, "k": args.k, "arity": args.arity}


def cmd_gen(args) -> int:
    if args.kind in TREE_SHAPES:
        _emit(format_tree(make_tree(args.kind, args.n, args.seed)), args.out)
    else:
        _emit(format_list(random_list(args.n, args.seed, args.kind)), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    text = Path(args.input).read_text()
    data = parse_tree(text) if args.kind in TREE_KINDS else parse_list(text)
    index = build_index(args.kind, data, **_params(args))
    save_index(index, args.out)
    print(f"built {index.kind} n={index.n} words={index.words} -> {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_query(args) -> int:
    index = load_index(args.snapshot)
    text = Path(args.queries).read_text() if args.queries not in (None, "-") else sys.stdin.read()
    tree = is_tree_index(index)
    lines = []
    for a, b in parse_queries(text, index.n, tree=tree):
        counter = ProbeCounter()
        ans = index.query(a - 1, b - 1, counter) if tree else index.query(a, b, counter)
        lines.append(f"{ans[0]}\t{ans[1]}\t{counter.probes}\n")
    _emit("".join(lines), args.out)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    sizes = _int_list(args.sizes) if args.sizes else [s for s in DEFAULT_SIZES if s < args.n] + [args.n]
    report = run_fuzz(args.kind, sizes, seeds=args.seeds, base_seed=args.seed, mutate=args.mutate)
    _emit(report.text(), args.report)
    if report.passed:
        return EXIT_OK
    Path(args.out).write_text(report.findings[0].to_json())
    print(f"mismatch found; reproducer written to {args.out}", file=sys.stderr)
    return EXIT_FINDING


def cmd_bench(args) -> int:
    rows = run_bench(args.kind, _int_list(args.n), queries=args.queries, seed=args.seed,
                     workload=args.workload, **_params(args))
    _emit(rows_to_csv(rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rangequery", description="Range mode and median query indexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded random list or tree")
    p.add_argument("--kind", default="uniform", choices=["uniform", "zipf", *sorted(TREE_SHAPES)])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("build", help="build an index and save a snapshot")
    p.add_argument("input", help="list file or tree file")
    p.add_argument("--kind", required=True, choices=ALL_KINDS)
    _add_params(p)
    p.add_argument("--out", required=True, help="snapshot path")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("query", help="answer queries against a snapshot")
    p.add_argument("snapshot")
    p.add_argument("queries", nargs="?", help="file with one 'i j' or 'u v' pair per line (default: stdin)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("fuzz", help="compare indexes with the brute-force oracle")
    p.add_argument("--kind", type=_kind_list, default=list(ALL_KINDS), help="comma list of kinds, or 'all'")
    p.add_argument("--n", type=int, default=200, help="largest instance size")
    p.add_argument("--sizes", help="explicit comma list of sizes (overrides --n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1, help="instances per size")
    p.add_argument("--mutate", action="store_true", help="inject an off-by-one into range counting")
    p.add_argument("--out", default="fuzz-repro.json", help="where to dump a minimized reproducer")
    p.add_argument("--report", help="report file (default: stdout)")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("bench", help="measure words and probes, write CSV")
    p.add_argument("--kind", type=_kind_list, default=[], help="comma list of kinds, or 'all'")
    p.add_argument("--n", default="", help="comma list of sizes")
    _add_params(p)
    p.add_argument("--queries", type=int, default=1000)
    p.add_argument("--workload", choices=["uniform", "short"], default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RangeQueryError, OSError) as exc:
        print(f"rangequery {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
