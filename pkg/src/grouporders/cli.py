"""Command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 parse/validation error,
3 result outside the supported or classified range.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import census as census_mod
from .arithmetic import MAX_INPUT
from .classifier import NotClassifiedError, classify, solve
from .cubefree import count
from .graph import build_graph, to_dict, to_dot
from .verify import cross_check

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_UNCLASSIFIED = 0, 1, 2, 3


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 1 <= n <= MAX_INPUT:
        raise argparse.ArgumentTypeError(f"{n} is outside [1, 2**63]")
    return n


def _emit(args, command: str, inputs: dict, result, status: str, note: str, text: str) -> int:
    if getattr(args, "json", False):
        envelope = {"command": command, "input": inputs, "result": result,
                    "status": status, "note": note}
        print(json.dumps(envelope, sort_keys=True))
    else:
        print(text)
    return EXIT_OK if status == "ok" else (EXIT_VERIFY if status == "error" else EXIT_UNCLASSIFIED)


def cmd_count(args) -> int:
    res = count(args.n)
    if res.exact:
        return _emit(args, "count", {"n": args.n}, res.to_dict(), "ok", "", str(res.value))
    bound = f", lower bound {res.lower_bound}" if res.lower_bound else ""
    note = f"unsupported ({res.reason}){bound}"
    return _emit(args, "count", {"n": args.n}, res.to_dict(), "unsupported", note, note)


def cmd_graph(args) -> int:
    g = build_graph(args.n)
    if args.json:
        print(json.dumps(to_dict(g), sort_keys=True))
    else:
        sys.stdout.write(to_dot(g, f"G{args.n}"))
    return EXIT_OK


def cmd_classify(args) -> int:
    v = classify(args.n)
    if v.k is None:
        note = "g(n) is not one of 1, 2, 3, 6, 7 (or n is outside the classified forms)"
        return _emit(args, "classify", {"n": args.n}, v.to_dict(), "unsupported", note, "unknown")
    text = f"k={v.k} rule={v.matched_rule} witness={json.dumps(v.witness, sort_keys=True)}"
    return _emit(args, "classify", {"n": args.n}, v.to_dict(), "ok", "", text)


def cmd_solve(args) -> int:
    inputs = {"k": args.k, "max": args.max}
    try:
        found = solve(args.k, args.max, args.jobs)
    except NotClassifiedError as exc:
        note = str(exc)
        return _emit(args, "solve", inputs, None, "unsupported", note, note)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _emit(args, "solve", inputs, found, "ok", f"{len(found)} solutions",
                 " ".join(map(str, found)))


def cmd_verify(args) -> int:
    if not 1 <= args.max <= 10**6:
        print("error: verify needs 1 <= --max <= 10**6", file=sys.stderr)
        return EXIT_USAGE
    summary = cross_check(args.max, args.jobs)
    bad = summary["disagreements"]
    lines = [f"checked n <= {args.max}"]
    lines += [f"  g = {k}: {c}" for k, c in summary["per_k"].items()]
    lines += [f"  skipped ({reason}): {c}" for reason, c in summary["skipped"].items()]
    if bad:
        lines.append(f"{len(bad)} disagreements, first {min(len(bad), 20)}:")
        lines += [f"  n={d['n']} count={d['count']} classify={d['classify']}" for d in bad[:20]]
        summary["disagreements"] = bad[:20]
        return _emit(args, "verify", {"max": args.max}, summary, "error", "classifier disagrees with count", "\n".join(lines))
    lines.append("ok")
    return _emit(args, "verify", {"max": args.max}, summary, "ok", "no disagreements", "\n".join(lines))


def cmd_census(args) -> int:
    if not 2 <= args.vertices <= 6:
        print("error: --vertices must be between 2 and 6", file=sys.stderr)
        return EXIT_USAGE
    targets = (args.target,) if args.target else (6, 7)
    report = census_mod.census(args.vertices, 2, 2, targets)
    lines = []
    for e in report.entries:
        labels = ", ".join(f"{k}={v}" for k, v in (e.label_key() or {}).items()) or "-"
        lines.append(f"g={e.g}  {e.name or '?':<10} labels: {labels:<6} edges: {sorted(e.graph.edges)}")
    inputs = {"vertices": args.vertices, "target": args.target}
    return _emit(args, "census", inputs, report.to_dict(), "ok", f"{len(report.entries)} shapes", "\n".join(lines))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grouporders", description="Count and classify groups of order n.")
    sub = parser.add_subparsers(dest="command", required=True)
    jobs_default = os.cpu_count() or 1

    p = sub.add_parser("count", help="number of groups of order n")
    p.add_argument("n", type=positive_int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("graph", help="generalized Hölder graph of n")
    p.add_argument("n", type=positive_int)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="DOT output (default)")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("classify", help="decide whether g(n) is 1, 2, 3, 6 or 7")
    p.add_argument("n", type=positive_int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="all n <= max with g(n) = k")
    p.add_argument("k", type=int)
    p.add_argument("--max", type=positive_int, default=1000)
    p.add_argument("--jobs", type=positive_int, default=jobs_default)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="cross-check classify against count")
    p.add_argument("--max", type=positive_int, default=10**5)
    p.add_argument("--jobs", type=positive_int, default=jobs_default)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("census", help="admissible square-free shapes")
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--target", type=int, choices=(6, 7))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
