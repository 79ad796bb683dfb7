"""Command line interface.

Exit codes: 0 clean, 1 mismatches found (reports are still written),
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness, rules, trinity
from .arith import is_prime
from .errors import BoundExceeded, BudgetExceeded, NotApplicable, OutOfDomain
from .forms import Family, represent_definite, represent_indefinite

EXIT_CLEAN, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_represent(args) -> int:
    family = Family(args.family)
    if family is Family.E:
        w = represent_definite(args.n, args.q, args.multiplier)
    else:
        if args.multiplier != 1:
            raise OutOfDomain("--multiplier applies to the definite family only")
        w = represent_indefinite(args.n, args.q, family)
    if w is None:
        print(f"{family.value}({args.q}): no representation of {args.n}")
    else:
        form = {"E": "a^2+{q}b^2", "H1": "{q}b^2-a^2", "H2": "a^2-{q}b^2"}[family.value]
        lhs = form.format(q=args.q)
        rhs = args.n if w.multiplier == 1 else f"{w.multiplier}*{args.n}"
        print(f"(a, b) = ({w.a}, {w.b}): {lhs} = {rhs}")
    return EXIT_CLEAN


def _tags_for(q: int) -> list[str]:
    return [tag for tag, spec in harness.THEOREMS.items() if q in spec.qs]


def cmd_check(args) -> int:
    if not is_prime(args.p):
        raise OutOfDomain(f"{args.p} is not prime")
    tags = [args.theorem] if args.theorem else _tags_for(args.q)
    if not tags:
        raise KeyError(f"no theorem covers q={args.q}")
    status = EXIT_CLEAN
    for tag in tags:
        spec = harness.get_theorem(tag, args.q)
        if not spec.domain(args.q, args.p):
            print(f"{tag} q={args.q} p={args.p}: outside the theorem's domain")
            continue
        mismatches = spec.check(args.q, args.p)
        if mismatches:
            status = EXIT_MISMATCH
            for m in mismatches:
                print(f"{tag} q={args.q} p={args.p}: MISMATCH {m['kind']} "
                      f"predicate={m['predicate']} witness_found={m['witness_found']} "
                      f"witness={m['witness']}")
        else:
            print(f"{tag} q={args.q} p={args.p}: agree")
    return status


def cmd_verify(args) -> int:
    report = harness.verify_theorem(args.theorem, args.q, args.bound, args.workers)
    text = report.to_json() if args.format == "json" else report.to_csv()
    _emit(text, args.out)
    if args.out:
        print(f"{args.theorem} q={args.q}: checked {report.checked_count} primes, "
              f"{len(report.mismatches)} mismatches", file=sys.stderr)
    return EXIT_CLEAN if report.clean else EXIT_MISMATCH


def cmd_explore(args) -> int:
    if args.problem == "problem1":
        report = harness.explore_problem1(args.qmax, args.bound)
        _emit(_dump(report.to_dict()), args.out)
    else:
        _emit(_dump(harness.explore_problem2(args.q1, args.q2, args.bound)), args.out)
    return EXIT_CLEAN


def cmd_trinity(args) -> int:
    report = trinity.verify_inclusions(args.bound)
    _emit(_dump(report.to_dict()), args.out)
    return EXIT_CLEAN if report.clean else EXIT_MISMATCH


def cmd_tables(args) -> int:
    _emit(rules.export_tables_json(), args.out)
    return EXIT_CLEAN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primeforms",
        description="Representations of primes by a^2+qb^2, qb^2-a^2, a^2-qb^2 and their audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("represent", help="find a witness for n in a form family")
    p.add_argument("--family", choices=[f.value for f in Family], required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--multiplier", type=int, default=1)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("check", help="evaluate predicates and oracles at one prime")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--theorem", choices=sorted(harness.THEOREMS))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="verify a theorem case over a prime range")
    p.add_argument("--theorem", choices=sorted(harness.THEOREMS), required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker processes (default: ${harness.WORKERS_ENV} or CPU count)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="empirical explorers for the two open problems")
    esub = p.add_subparsers(dest="problem", required=True)
    e1 = esub.add_parser("problem1")
    e1.add_argument("--qmax", type=int, required=True)
    e1.add_argument("--bound", type=int, required=True)
    e1.add_argument("--out")
    e2 = esub.add_parser("problem2")
    e2.add_argument("--q1", type=int, required=True)
    e2.add_argument("--q2", type=int, required=True)
    e2.add_argument("--bound", type=int, required=True)
    e2.add_argument("--out")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("trinity", help="check the inclusions among the sets A, B, C")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_trinity)

    p = sub.add_parser("tables", help="rule and criterion tables")
    tsub = p.add_subparsers(dest="action", required=True)
    t = tsub.add_parser("export")
    t.add_argument("--out")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_CLEAN
    try:
        return args.func(args)
    except (KeyError, ValueError, OutOfDomain, BoundExceeded, BudgetExceeded,
            NotApplicable) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"primeforms: error: {message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
