"""Command-line front end: registry listing, term comparison, suite runner.

Reports are versioned JSON objects with a ``schema`` field; violations are
sorted canonically so output is order-independent.  The worker-count
environment variable ``DILATORS_WORKERS`` is read and echoed in reports; the
current runner executes serially, which is always a valid schedule.

Exit codes: 0 on success, 1 when any check reports a violation, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import checks
from .barind import family_from_json, j_embed
from .compose import compose
from .derivative import deriv_compare, deriv_enumerate, deriv_member
from .extension import ext_compare, ext_member
from .grammar import (
    parse_deriv_term,
    parse_ext_term,
    print_deriv_term,
    print_ext_term,
)
from .oracle import translate
from .orders import DomainError, finite_order, naturals
from .praedil import REGISTRY, check_normality, check_praedilator_laws, registry_get

SCHEMA = "dilators-report/1"


def _order_from_name(name: str):
    if name == "nat":
        return naturals()
    if name.startswith("fin"):
        return finite_order(int(name[3:]))
    raise DomainError(f"unknown order {name!r} (use nat or finN)")


def _rel(c: int) -> str:
    return {-1: "<", 0: "=", 1: ">"}[c]


def _emit(args, reports: list, extra: dict | None = None) -> int:
    payload = {
        "schema": SCHEMA,
        "workers": int(os.environ.get("DILATORS_WORKERS", "1")),
        "reports": [r.to_dict() for r in reports],
        "passed": all(r.passed for r in reports),
    }
    payload.update(extra or {})
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    return 0 if payload["passed"] else 1


def _cmd_list(args) -> int:
    for name in sorted(REGISTRY):
        T = registry_get(name)
        print(f"{name}\t{'normal' if T.normal else 'prae'}")
    return 0


def _cmd_ext_compare(args) -> int:
    T = registry_get(args.dilator)
    X = _order_from_name(args.order)
    left = parse_ext_term(args.dilator, args.left)
    right = parse_ext_term(args.dilator, args.right)
    for side, term in (("left", left), ("right", right)):
        if not ext_member(T, X, term):
            raise DomainError(f"{side} term {print_ext_term(args.dilator, term)} is not a valid extension term")
    print(_rel(ext_compare(T, X, left, right)))
    return 0


def _cmd_deriv_enumerate(args) -> int:
    T = registry_get(args.dilator)
    for term in deriv_enumerate(T, args.n, args.bound):
        print(print_deriv_term(args.dilator, term))
    return 0


def _cmd_deriv_compare(args) -> int:
    T = registry_get(args.dilator)
    left = parse_deriv_term(args.dilator, args.left)
    right = parse_deriv_term(args.dilator, args.right)
    for side, term in (("left", left), ("right", right)):
        if not deriv_member(T, args.n, term):
            raise DomainError(f"{side} term {print_deriv_term(args.dilator, term)} is not valid at level {args.n}")
    print(_rel(deriv_compare(T, args.n, left, right)))
    return 0


def _cmd_deriv_check(args) -> int:
    reports = checks.SUITES[args.suite](seed=args.seed, bound=args.bound)
    return _emit(args, reports)


def _cmd_compose_check(args) -> int:
    T = registry_get(args.outer)
    S = registry_get(args.inner)
    TS = compose(T, S)
    reports = [check_praedilator_laws(TS, args.depth, bound=args.bound)]
    if TS.normal:
        reports.append(check_normality(TS, args.depth, bound=args.bound))
    return _emit(args, reports)


def _cmd_barind_demo(args) -> int:
    with open(args.family) as fh:
        family = family_from_json(fh.read())
    t0 = time.time()
    report = checks.barind_report(family)
    images = j_embed(family)
    report.params["seconds"] = round(time.time() - t0, 3)
    if not args.json:
        for (x, seq) in family.elements():
            print(f"({x}, {list(seq)}) -> {images[(x, seq)]!r}")
        verdict = "pass" if report.passed else "FAIL"
        print(f"verdict: {verdict} ({report.checks} checks)")
        return 0 if report.passed else 1
    return _emit(args, [report])


def _cmd_oracle_translate(args) -> int:
    from .praedil import omega_dilator

    term = parse_deriv_term("omega", args.term)
    print(str(translate(omega_dilator(), term)))
    return 0


def _cmd_suite_all(args) -> int:
    small = args.bound == "small"
    from .praedil import omega_dilator, segment_dilator

    t0 = time.time()
    reports = []
    for T in (omega_dilator(), segment_dilator()):
        for n in range(3):
            reports.append(checks.linearity_report(T, n, 9))
    reports.append(checks.oracle_report(9, extra_pairs=1000 if small else 10000, seed=args.seed))
    for name in ("omega", "bump", "segment"):
        reports.append(checks.eta_report(registry_get(name), 4, bound=4))
    for size in (1, 2, 3):
        reports.append(checks.zeta_report(size, bound=3 if small else 4))
    for n in range(3):
        reports.append(checks.xi_report(omega_dilator(), n, 4 if small else 5))
    reports.append(checks.universality_report())
    reports.append(checks.heights_report(samples=1000 if small else 10000, seed=args.seed))
    reports.append(checks.segments_report(samples=200 if small else 1000, seed=args.seed))
    reports.append(checks.chain_report(seed=args.seed))
    if args.family:
        with open(args.family) as fh:
            reports.append(checks.barind_report(family_from_json(fh.read())))
    return _emit(args, reports, {"seed": args.seed, "elapsed": round(time.time() - t0, 3)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dilators", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dilators", help="registry operations")
    psub = p.add_subparsers(dest="subcommand", required=True)
    psub.add_parser("list", help="list registered dilators").set_defaults(func=_cmd_list)

    p = sub.add_parser("ext", help="extension terms")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("compare", help="compare two extension terms")
    q.add_argument("--dilator", required=True)
    q.add_argument("--order", default="nat", help="nat or finN")
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.set_defaults(func=_cmd_ext_compare)

    p = sub.add_parser("deriv", help="derivative term system")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("enumerate", help="list terms up to a size bound")
    q.add_argument("--dilator", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--bound", type=int, default=6)
    q.set_defaults(func=_cmd_deriv_enumerate)
    q = psub.add_parser("compare", help="compare two derivative terms")
    q.add_argument("--dilator", required=True)
    q.add_argument("--n", type=int, default=0)
    q.add_argument("--left", required=True)
    q.add_argument("--right", required=True)
    q.set_defaults(func=_cmd_deriv_compare)
    q = psub.add_parser("check", help="run a verification suite")
    q.add_argument("--suite", required=True, choices=sorted(checks.SUITES))
    q.add_argument("--bound", type=int, default=6)
    q.add_argument("--seed", type=int, default=42)
    q.set_defaults(func=_cmd_deriv_check)

    p = sub.add_parser("compose", help="composite dilators")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("check", help="verify the laws of a composite")
    q.add_argument("--outer", required=True)
    q.add_argument("--inner", required=True)
    q.add_argument("--depth", type=int, default=2)
    q.add_argument("--bound", type=int, default=3)
    q.set_defaults(func=_cmd_compose_check)

    p = sub.add_parser("barind", help="tree-family pipeline")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("demo", help="embed a tree family and verify")
    q.add_argument("--family", required=True, help="JSON family file")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=_cmd_barind_demo)

    p = sub.add_parser("oracle", help="ordinal oracle")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("translate", help="read a level-zero term as an ordinal")
    q.add_argument("--term", required=True)
    q.set_defaults(func=_cmd_oracle_translate)

    p = sub.add_parser("suite", help="verification suites")
    psub = p.add_subparsers(dest="subcommand", required=True)
    q = psub.add_parser("all", help="run every suite")
    q.add_argument("--bound", choices=["small", "full"], default="small")
    q.add_argument("--seed", type=int, default=42)
    q.add_argument("--family", default=None, help="optional JSON family file")
    q.set_defaults(func=_cmd_suite_all)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
