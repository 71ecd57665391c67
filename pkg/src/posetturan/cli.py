"""Command-line front end.

Subcommands: construct, count, free, search, formula, verify. Machine-stable
output by default (JSON / TSV); human tables behind --pretty. Exit codes:
0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .constructions import CONSTRUCTIONS, middle_two_levels
from .dsl import DslError, parse_poset_dsl, parse_single_poset
from .embedding import count_copies, find_any_embedding
from .familyio import FamilyFormatError, format_family, read_family
from .formulas import FORMULAS, closed_formula
from .proofcheck import VERIFIERS, run_verifiers
from .search import cached_la_exact, la_exact

USAGE_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetturan",
        description="Workbench for generalized Turan problems on posets in the Boolean lattice",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit an extremal family to stdout")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", choices=("low", "high"), default="low")

    p = sub.add_parser("count", help="count copies of Q in a family")
    p.add_argument("--family", required=True, metavar="FILE")
    p.add_argument("--q", required=True, metavar="POSETSPEC")

    p = sub.add_parser("free", help="decide P-freeness of a family")
    p.add_argument("--family", required=True, metavar="FILE")
    p.add_argument("--forbid", required=True, metavar="POSETSPEC")
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("search", help="exact La(n, forbidden, #Q) by search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--forbid", required=True, metavar="POSETSPEC")
    p.add_argument("--q", required=True, metavar="POSETSPEC")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("formula", help="evaluate a closed-form count")
    p.add_argument("id", choices=sorted(FORMULAS))
    p.add_argument("--n", type=int)
    p.add_argument("--sweep", metavar="LO..HI")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--t", type=int)

    p = sub.add_parser("verify", help="run lemma verification suites")
    p.add_argument(
        "--lemma",
        choices=sorted(VERIFIERS) + ["all"],
        default="all",
    )
    p.add_argument("--seed", type=int, default=0)

    return parser


def _fail(message: str, code: int = USAGE_ERROR):
    print(f"error: {message}", file=sys.stderr)
    return code


def _format_value(value) -> str:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    return str(value)


def cmd_construct(args):
    func = CONSTRUCTIONS[args.name]
    if args.name == "middle-two-levels":
        fam = func(args.n, args.variant)
    else:
        fam = func(args.n)
    sys.stdout.write(format_family(fam))
    return 0


def cmd_count(args):
    fam = read_family(args.family)
    q = parse_single_poset(args.q)
    print(count_copies(fam, q))
    return 0


def cmd_free(args):
    fam = read_family(args.family)
    forbidden = parse_poset_dsl(args.forbid)
    hit = find_any_embedding(fam, forbidden)
    if hit is None:
        out = {"free": True}
    else:
        poset, witness = hit
        out = {
            "free": False,
            "poset": poset.canonical_key(),
            "witness": list(witness.assignment),
        }
    if args.pretty:
        if out["free"]:
            print("free: yes")
        else:
            print(f"free: no\nposet: {out['poset']}\nwitness masks: {out['witness']}")
    else:
        print(json.dumps(out, sort_keys=True))
    return 0


def cmd_search(args):
    forbidden = parse_poset_dsl(args.forbid)
    q = parse_single_poset(args.q)
    if args.no_cache:
        report = la_exact(args.n, forbidden, q, budget=args.budget)
    else:
        report = cached_la_exact(args.n, forbidden, q, budget=args.budget)
    payload = report.to_json()
    if args.pretty:
        print(f"optimum: {report.optimum}")
        print(f"complete: {report.complete}")
        print(f"nodes explored: {report.nodes_explored}")
        for w in report.witnesses:
            print(f"witness: {list(w)}")
    else:
        print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_formula(args):
    _, names = FORMULAS[args.id]
    extras = {}
    for name in names:
        if name == "n":
            continue
        value = getattr(args, name, None)
        if value is None:
            return _fail(f"formula {args.id} needs --{name}")
        extras[name] = value
    if args.sweep:
        try:
            lo, hi = (int(x) for x in args.sweep.split("..", 1))
        except ValueError:
            return _fail(f"bad sweep range {args.sweep!r}")
        for n in range(lo, hi + 1):
            value = closed_formula(args.id, n=n, **extras)
            print(f"{args.id}\t{n}\t{_format_value(value)}")
        return 0
    if args.n is None:
        return _fail("formula needs --n or --sweep")
    print(_format_value(closed_formula(args.id, n=args.n, **extras)))
    return 0


def cmd_verify(args):
    names = sorted(VERIFIERS) if args.lemma == "all" else [args.lemma]
    failed = False
    for report in run_verifiers(names, seed=args.seed):
        print(json.dumps(report.to_json(), sort_keys=True))
        if report.failures:
            failed = True
    return 1 if failed else 0


_COMMANDS = {
    "construct": cmd_construct,
    "count": cmd_count,
    "free": cmd_free,
    "search": cmd_search,
    "formula": cmd_formula,
    "verify": cmd_verify,
}


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return _COMMANDS[args.command](args)
    except (DslError, FamilyFormatError, FileNotFoundError) as exc:
        return _fail(str(exc))
    except (ValueError, ArithmeticError) as exc:
        return _fail(str(exc))


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
