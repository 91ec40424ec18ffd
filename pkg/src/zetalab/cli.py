"""Command-line driver.

Subcommands: jets, count, zeta, theta, decompose, branches, poles.
Exit codes: 0 success / verification passed, 1 verification failure,
2 usage error, 3 node budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .branches import ExtensionRequired, NotSquarefree, branch_report
from .counter import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    count_points,
)
from .homsys import build_auto_arc_system, build_nabla_system
from .jetalg import NotOnCurve, build_jet_algebra, classical_jet_algebra, hilbert_samuel, shift_to_origin
from .symbolics.fp import is_prime
from .symbolics.grammar import ParseError, parse_lt_expr, parse_poly
from .symbolics.series import pade_reconstruct, subseries_extract
from .zeta import (
    Inconclusive,
    pole_candidates,
    smoothness_test,
    theta_truncation,
    verify_decomposition,
    zeta_truncation,
)

USAGE_ERROR = 2
VERIFY_FAIL = 1
BUDGET_FAIL = 3


class UsageError(ValueError):
    pass


def _parse_curve(args):
    try:
        f = parse_poly(args.curve)
    except ParseError as exc:
        raise UsageError(f"cannot parse curve: {exc}")
    if getattr(args, "at", None):
        try:
            a, b = (Fraction(v) for v in args.at.split(","))
        except (ValueError, ZeroDivisionError):
            raise UsageError("--at expects two rationals: a,b")
        try:
            f = shift_to_origin(f, (a, b))
        except NotOnCurve as exc:
            raise UsageError(str(exc))
    if f.coefficient((0, 0)) != 0:
        raise UsageError("curve does not pass through the origin (use --at)")
    return f


def _parse_primes(text, default):
    if not text:
        return default
    try:
        primes = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError("--primes expects a comma-separated integer list")
    if len(set(primes)) != len(primes):
        raise UsageError("primes must be distinct")
    for p in primes:
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
    return primes


def _warn_assumption(f, primes):
    from .branches import multiplicity

    try:
        mult = multiplicity(f)
    except ValueError:
        return
    bad = [q for q in primes if mult % q == 0]
    if bad:
        print(
            f"warning: primes {bad} divide the multiplicity {mult}; counts "
            f"at those primes may deviate from the characteristic-zero class",
            file=sys.stderr,
        )


def _emit(args, doc, text_fn):
    if args.json:
        print(json.dumps(doc, separators=(", ", ": ")))
    else:
        text_fn()


def cmd_jets(args):
    f = _parse_curve(args)
    if args.nmax < 3:
        raise UsageError("--nmax must be >= 3 for a Hilbert-Samuel fit")
    fit = hilbert_samuel(f, args.nmax)
    doc = {
        "curve": f.render(),
        "lengths": list(fit.lengths),
        "e0": fit.e0,
        "e1": fit.e1,
        "stable_from": fit.stable_from,
    }

    def text():
        print(f"curve: {f.render()}")
        print("  n  length")
        for n, l in enumerate(fit.lengths, start=1):
            print(f"{n:3d}  {l:6d}")
        print(f"fit: l(n) = {fit.e0}*n + {fit.e1} for n >= {fit.stable_from}")

    _emit(args, doc, text)
    return 0


def _space_system(f, n, space):
    if space == "auto":
        return build_auto_arc_system(f, n)
    if space == "nabla":
        return build_nabla_system(build_jet_algebra(f, n), [f])
    if space == "classical":
        return build_nabla_system(classical_jet_algebra(n), [f])
    raise UsageError(f"unknown space {space!r}")


def cmd_count(args):
    f = _parse_curve(args)
    primes = _parse_primes(args.primes, (2, 3, 5))
    _warn_assumption(f, primes)
    system = _space_system(f, args.n, args.space)
    rows = []
    for q in primes:
        res = count_points(system, q, workers=args.workers, budget=args.budget)
        rows.append(
            {
                "q": q,
                "count": res.count,
                "nodes": res.nodes_visited,
                "partitions": res.partitions,
                "elapsed": res.elapsed,
            }
        )
    doc = {
        "curve": f.render(),
        "space": args.space,
        "n": args.n,
        "unknowns": len(system.unknowns),
        "equations": len(system.equations),
        "counts": rows,
    }

    def text():
        print(
            f"{args.space} space of {f.render()} at n={args.n}: "
            f"{len(system.unknowns)} unknowns, {len(system.equations)} equations"
        )
        for r in rows:
            print(
                f"  q={r['q']}: {r['count']}   "
                f"({r['nodes']} nodes, {r['elapsed']:.3f}s)"
            )

    _emit(args, doc, text)
    return 0


def _report_rows_text(report):
    print(f"curve: {report.curve}   series: {report.kind}   mode: {report.mode}")
    print("  n  length  counts" + (" " * 24) + "coeff        verified")
    for r in report.rows:
        counts = ", ".join(f"{q}:{c}" for q, c in sorted(r.counts.items()))
        coeff = r.coeff.render() if r.coeff is not None else "?"
        flag = "" if r.certain in (None, True) else " (uncertain)"
        print(f"{r.n:3d}  {r.length:6d}  {counts:28s}  {coeff:12s} {r.verified}{flag}")
        if r.note:
            print(f"     note: {r.note}")
    for m in report.mismatches:
        print(f"  mismatch: n={m[0]} q={m[1]} expected {m[2]} got {m[3]}")


def _series_command(args, theta_source=None):
    f = _parse_curve(args)
    mode = "verify" if args.verify else "fit"
    closed = None
    if args.verify:
        try:
            closed = parse_lt_expr(args.verify)
        except ParseError as exc:
            raise UsageError(f"cannot parse closed form: {exc}")
    default_primes = (2, 3, 5) if mode == "verify" else None
    primes = _parse_primes(args.primes, default_primes)
    _warn_assumption(f, primes or ())

    kwargs = dict(
        nmax=args.nmax,
        primes=primes,
        mode=mode,
        closed_form=closed,
        workers=args.workers,
        budget=args.budget,
    )
    if theta_source is None:
        report = zeta_truncation(f, **kwargs)
    else:
        report = theta_truncation(f, source=theta_source, **kwargs)

    if args.pade:
        try:
            d1, d2 = (int(v) for v in args.pade.split(","))
        except ValueError:
            raise UsageError("--pade expects two integers: d1,d2")
        series = report.coefficient_series()
        fn = pade_reconstruct(series, d1, d2)
        report.pade = fn
        if fn is not None:
            report.poles = pole_candidates(fn)[0]

    doc = report.to_json_dict()
    sub = None
    if args.subseries:
        try:
            r, offset = (int(v) for v in args.subseries.split(","))
        except ValueError:
            raise UsageError("--subseries expects two integers: r,offset")
        sub = subseries_extract(report.coefficient_series(), r, offset)
        doc["subseries"] = {
            "r": r,
            "offset": offset,
            "coeffs": [c.render() for c in sub.coeffs],
        }

    def text():
        _report_rows_text(report)
        if report.pade is not None:
            print(f"  pade: {report.pade.render()}")
            print(f"  pole candidates: {report.poles}")
        if sub is not None:
            print(f"  subseries: {sub.render()}")
        print("verdict:", "PASS" if report.ok else "FAIL")

    _emit(args, doc, text)
    return 0 if report.ok else VERIFY_FAIL


def cmd_zeta(args):
    return _series_command(args)


def cmd_theta(args):
    source = {"nabla": "curve-jets", "classical": "classical-jets"}.get(args.space)
    if source is None:
        raise UsageError("theta needs --space nabla or --space classical")
    return _series_command(args, theta_source=source)


def cmd_decompose(args):
    f = _parse_curve(args)
    primes = _parse_primes(args.primes, (2, 3, 5))
    _warn_assumption(f, primes)
    report = verify_decomposition(
        f, args.nmax, primes, workers=args.workers, budget=args.budget
    )
    doc = {
        "curve": report.curve,
        "cells": [
            {
                "n": c.n,
                "q": c.q,
                "nabla": c.nabla,
                "curve_points": c.curve_points,
                "auto": c.auto,
                "ok": c.ok,
            }
            for c in report.cells
        ],
        "warnings": report.warnings,
        "ok": report.ok,
    }

    def text():
        print(f"curve: {report.curve}")
        for w in report.warnings:
            print(f"  warning: {w}")
        print("  n  q   nabla = (|C|-1) q^(l-1) + auto   ok")
        for c in report.cells:
            print(
                f"{c.n:3d} {c.q:2d}   {c.nabla} = "
                f"({c.curve_points}-1)*... + {c.auto}   {c.ok}"
            )
        print("verdict:", "PASS" if report.ok else "FAIL")

    _emit(args, doc, text)
    return 0 if report.ok else VERIFY_FAIL


def cmd_branches(args):
    f = _parse_curve(args)
    try:
        doc = branch_report(f, args.order)
    except (ExtensionRequired, NotSquarefree) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VERIFY_FAIL

    def text():
        print(f"curve: {f.render()}   multiplicity {doc['multiplicity']}")
        for br in doc["branches"]:
            print(f"  branch r={br['r']}: x = {br['x']}, y = {br['y']} "
                  f"(verified to t^{br['verified_to']})")
        print(f"  branch multiplicity sum: {doc['branch_multiplicity_sum']} "
              f"({'matches' if doc['matches_multiplicity'] else 'MISMATCH'})")
        if doc["semigroup"]:
            sg = doc["semigroup"]
            print(f"  semigroup <{', '.join(map(str, sg['gens']))}>, conductor {sg['conductor']}")

    _emit(args, doc, text)
    return 0


def cmd_poles(args):
    try:
        fn = parse_lt_expr(args.expr)
    except ParseError as exc:
        raise UsageError(f"cannot parse expression: {exc}")
    a_bound, b_bound = 10, None
    if args.bounds:
        try:
            a_bound, b_bound = (int(v) for v in args.bounds.split(","))
        except ValueError:
            raise UsageError("--bounds expects two integers: A,B")
    factors, remainder = pole_candidates(fn, a_bound, b_bound)
    from .symbolics.series import _render_tpoly

    doc = {
        "expr": fn.render(),
        "factors": [list(p) for p in factors],
        "remainder": _render_tpoly(remainder),
    }

    def text():
        print(f"denominator factors (1 - L^a t^b): {factors}")
        print(f"remainder: {doc['remainder']}")

    _emit(args, doc, text)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="zetalab",
        description="Exact jet-algebra, arc-space counting and zeta-series "
        "toolkit for plane curve germs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, curve=True):
        if curve:
            sp.add_argument("--curve", required=True, help="polynomial in x, y")
            sp.add_argument("--at", help="rational point a,b to translate to the origin")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    sp = sub.add_parser("jets", help="jet algebra lengths and Hilbert-Samuel fit")
    common(sp)
    sp.add_argument("--nmax", type=int, required=True)
    sp.set_defaults(fn=cmd_jets)

    sp = sub.add_parser("count", help="count F_q points of one arc space level")
    common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--space", choices=("auto", "nabla", "classical"), default="auto")
    sp.add_argument("--primes", help="comma-separated primes (default 2,3,5)")
    sp.set_defaults(fn=cmd_count)

    for name, help_text in (
        ("zeta", "auto-arc series: verify a closed form or fit coefficients"),
        ("theta", "arc series into the curve from its jets or classical jets"),
    ):
        sp = sub.add_parser(name, help=help_text)
        common(sp)
        sp.add_argument("--nmax", type=int, required=True)
        sp.add_argument("--primes")
        sp.add_argument("--verify", metavar="EXPR", help="closed form to check")
        sp.add_argument("--fit", action="store_true", help="interpolate classes (default)")
        sp.add_argument("--pade", metavar="D1,D2", help="reconstruct a rational function")
        sp.add_argument("--subseries", metavar="R,OFFSET", help="extract an arithmetic subseries")
        if name == "theta":
            sp.add_argument("--space", choices=("nabla", "classical"), default="nabla")
            sp.set_defaults(fn=cmd_theta)
        else:
            sp.set_defaults(fn=cmd_zeta)

    sp = sub.add_parser("decompose", help="check nabla = (|C|-1) q^(l-1) + auto cellwise")
    common(sp)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--primes")
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("branches", help="Puiseux branches, semigroup, conductor")
    common(sp)
    sp.add_argument("--order", type=int, default=12, help="truncation order")
    sp.set_defaults(fn=cmd_branches)

    sp = sub.add_parser("poles", help="factor a denominator into (1 - L^a t^b)")
    sp.add_argument("expr", help="rational function in L and t")
    sp.add_argument("--bounds", metavar="A,B")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_poles)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BUDGET_FAIL
    except (NotOnCurve, ParseError, ValueError, Inconclusive) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
