"""Assembly and verification of zeta-series truncations from counts.

The series coefficient convention: the t^(n-1) coefficient is the class
of the level-n space times L^(-length of the source fat point).  With
that normalization the one-point space at n = 1 contributes L^-1, a
smooth germ gives L^-1/(1-t), and the decomposition identity
count(nabla) = (|C(F_q)| - 1) q^(length-1) + count(auto) holds
cell-by-cell as exact integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .counter import DEFAULT_BUDGET, count_points
from .homsys import build_auto_arc_system, build_nabla_system
from .jetalg import build_jet_algebra, classical_jet_algebra
from .symbolics.classpoly import ClassPoly, InterpolationError, interpolate_class_poly
from .symbolics.mpoly import MPoly
from .symbolics.series import (
    RationalFn,
    ZetaTruncation,
    divide_binomial,
    series_of_rational,
    ttrim,
)

NORMALIZATION_TAG = "L^{-d*l(n)} t^{n-1}"


class Inconclusive(RuntimeError):
    pass


@dataclass
class ZetaRow:
    n: int
    length: int
    counts: dict
    skipped: tuple = ()
    flagged: tuple = ()
    cls: ClassPoly | None = None
    certain: bool | None = None
    coeff: ClassPoly | None = None
    verified: bool | None = None
    note: str = ""


@dataclass
class ZetaReport:
    curve: str
    kind: str  # "auto" | "curve-jets" | "classical-jets"
    nmax: int
    primes: tuple
    mode: str  # "verify" | "fit"
    rows: list = field(default_factory=list)
    closed_form: RationalFn | None = None
    ok: bool = True
    mismatches: list = field(default_factory=list)
    pade: RationalFn | None = None
    poles: list | None = None

    def coefficient_series(self) -> ZetaTruncation:
        coeffs = []
        for row in self.rows:
            if row.coeff is None:
                raise Inconclusive(f"no coefficient available at n={row.n}")
            coeffs.append(row.coeff)
        return ZetaTruncation(tuple(coeffs))

    def to_json_dict(self) -> dict:
        rows = []
        for r in self.rows:
            rows.append(
                {
                    "n": r.n,
                    "length": r.length,
                    "counts": {str(q): c for q, c in sorted(r.counts.items())},
                    "class": r.cls.render() if r.cls is not None else None,
                    "coeff": r.coeff.render() if r.coeff is not None else None,
                    "verified": r.verified,
                }
            )
        return {
            "curve": self.curve,
            "kind": self.kind,
            "mode": self.mode,
            "normalization": NORMALIZATION_TAG,
            "primes": list(self.primes),
            "rows": rows,
            "closed_form": self.closed_form.render() if self.closed_form else None,
            "pade": self.pade.render() if self.pade else None,
            "poles": [list(p) for p in self.poles] if self.poles is not None else None,
            "ok": self.ok,
            "mismatches": [list(m) for m in self.mismatches],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))


def _build_level(f, n, kind):
    """Return (system, source_length) for one series level."""
    if kind == "auto":
        algebra = build_jet_algebra(f, n)
        return build_auto_arc_system(f, n), algebra.dim
    if kind == "curve-jets":
        algebra = build_jet_algebra(f, n)
        return build_nabla_system(algebra, [f]), algebra.dim
    if kind == "classical-jets":
        algebra = classical_jet_algebra(n)
        return build_nabla_system(algebra, [f]), algebra.dim
    raise ValueError(f"unknown series kind {kind!r}")


def _series_report(
    f: MPoly,
    nmax: int,
    primes,
    mode: str,
    kind: str,
    closed_form: RationalFn | None = None,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> ZetaReport:
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    primes = tuple(primes)
    if not primes or len(set(primes)) != len(primes):
        raise ValueError("primes must be nonempty and distinct")
    if mode == "verify" and closed_form is None:
        raise ValueError("verify mode needs a closed form")

    mult = f.min_degree()
    expected = None
    if mode == "verify":
        expected = series_of_rational(closed_form, nmax)

    report = ZetaReport(
        curve=f.render(),
        kind=kind,
        nmax=nmax,
        primes=primes,
        mode=mode,
        closed_form=closed_form,
    )

    for n in range(1, nmax + 1):
        system, length = _build_level(f, n, kind)
        counts = {}
        skipped = []
        flagged = tuple(q for q in primes if mult % q == 0)
        for q in primes:
            if q ** system.nvars > budget:
                skipped.append(q)
                continue
            counts[q] = count_points(system, q, workers=workers, budget=budget).count
        row = ZetaRow(
            n=n, length=length, counts=counts,
            skipped=tuple(skipped), flagged=flagged,
        )

        if mode == "verify":
            c = expected[n - 1]
            row.coeff = c
            ok = True
            for q, actual in counts.items():
                want = c.eval(q) * q**length
                if want.denominator != 1 or want.numerator != actual:
                    ok = False
                    report.mismatches.append((n, q, str(want), actual))
            row.verified = ok
            report.ok = report.ok and ok
        else:
            _fit_row(row, system.nvars, report)
        report.rows.append(row)
    return report


def _fit_row(row: ZetaRow, degree_bound: int, report: ZetaReport):
    samples = sorted(row.counts.items())
    if len(samples) < 2:
        row.note = "too few counts to interpolate"
        report.ok = False
        return
    try:
        cls, certain = interpolate_class_poly(samples, degree_bound)
    except InterpolationError:
        # retry without the characteristic-divides-multiplicity primes
        clean = [s for s in samples if s[0] not in row.flagged]
        if len(clean) >= 2:
            try:
                cls, certain = interpolate_class_poly(clean, degree_bound)
                row.note = "flagged primes excluded from the fit"
            except InterpolationError as exc:
                row.note = f"non-polynomial or bad reduction: {exc}"
                report.ok = False
                return
        else:
            row.note = "non-polynomial or bad reduction"
            report.ok = False
            return
    row.cls = cls
    row.certain = certain
    row.coeff = cls.shifted(-row.length)
    row.verified = all(
        cls.eval_int(q) == c for q, c in row.counts.items() if q not in row.flagged
    )


def zeta_truncation(
    f: MPoly,
    nmax: int,
    primes=None,
    mode: str = "fit",
    closed_form: RationalFn | None = None,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> ZetaReport:
    """Series data for the auto-arc spaces of the germ of f at the origin."""
    if primes is None:
        primes = (2, 3, 5) if mode == "verify" else _first_primes(7)
    return _series_report(f, nmax, primes, mode, "auto", closed_form, workers, budget)


def theta_truncation(
    f: MPoly,
    source: str = "curve-jets",
    nmax: int = 3,
    primes=None,
    mode: str = "fit",
    closed_form: RationalFn | None = None,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> ZetaReport:
    """Series data for arcs from curve jets (or classical jets) into the curve."""
    if source not in ("curve-jets", "classical-jets"):
        raise ValueError("source must be 'curve-jets' or 'classical-jets'")
    if primes is None:
        primes = (2, 3, 5) if mode == "verify" else _first_primes(7)
    return _series_report(f, nmax, primes, mode, source, closed_form, workers, budget)


def _first_primes(k):
    from .symbolics.fp import first_primes

    return first_primes(k)


# -- decomposition check ---------------------------------------------------------


@dataclass
class DecompositionCell:
    n: int
    q: int
    nabla: int
    curve_points: int
    auto: int
    ok: bool


@dataclass
class DecompositionReport:
    curve: str
    cells: list
    ok: bool
    warnings: list


def curve_point_count(f: MPoly, q: int) -> int:
    """|C(F_q)| by direct evaluation on the affine plane."""
    total = 0
    for a in range(q):
        for b in range(q):
            if f.eval_mod((a, b), q) == 0:
                total += 1
    return total


def _singular_points_mod(f, q):
    fx = _partial(f, 0)
    fy = _partial(f, 1)
    pts = []
    for a in range(q):
        for b in range(q):
            if (
                f.eval_mod((a, b), q) == 0
                and fx.eval_mod((a, b), q) == 0
                and fy.eval_mod((a, b), q) == 0
            ):
                pts.append((a, b))
    return pts


def _partial(f: MPoly, k: int) -> MPoly:
    terms = {}
    for e, c in f.terms.items():
        if e[k]:
            e2 = list(e)
            e2[k] -= 1
            terms[tuple(e2)] = terms.get(tuple(e2), 0) + c * e[k]
    return MPoly(f.variables, terms)


def verify_decomposition(
    f: MPoly,
    nmax: int,
    primes,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> DecompositionReport:
    """Check count(nabla) = (|C| - 1) q^(l-1) + count(auto) on every cell.

    The identity presumes the origin is the only singular point; other
    singular points spotted over any of the test primes are reported as
    warnings rather than failures."""
    warnings = []
    for q in primes:
        extra = [p for p in _singular_points_mod(f, q) if p != (0, 0)]
        if extra:
            warnings.append(f"singular points besides the origin over F_{q}: {extra}")
    cells = []
    ok = True
    for n in range(1, nmax + 1):
        algebra = build_jet_algebra(f, n)
        nabla_sys = build_nabla_system(algebra, [f])
        auto_sys = build_auto_arc_system(f, n)
        for q in primes:
            nab = count_points(nabla_sys, q, workers=workers, budget=budget).count
            aut = count_points(auto_sys, q, workers=workers, budget=budget).count
            pts = curve_point_count(f, q)
            good = nab == (pts - 1) * q ** (algebra.dim - 1) + aut
            cells.append(DecompositionCell(n, q, nab, pts, aut, good))
            ok = ok and good
    return DecompositionReport(curve=f.render(), cells=cells, ok=ok, warnings=warnings)


# -- smoothness decision -----------------------------------------------------------


L_INVERSE = ClassPoly.lpow(-1)


def smoothness_test(report: ZetaReport):
    """True iff every certain normalized coefficient equals L^-1.

    Scans in order of n; the first certain coefficient differing from
    L^-1 is returned as the witness.  Raises Inconclusive when an
    uncertain coefficient is reached before a decision."""
    for row in report.rows:
        if report.mode == "fit" and not row.certain:
            raise Inconclusive(
                f"coefficient at n={row.n} is uncertain "
                f"(need {2 * row.length + 1} primes, have {len(row.counts)})"
            )
        if report.mode == "verify" and not row.verified:
            raise Inconclusive(
                f"claimed coefficient at n={row.n} is contradicted by counts"
            )
        if row.coeff is None:
            raise Inconclusive(f"no coefficient at n={row.n}")
        if row.coeff != L_INVERSE:
            return False, (row.n, row.coeff)
    return True, None


# -- pole candidates ----------------------------------------------------------------


def pole_candidates(fn: RationalFn, a_bound: int = 10, b_bound: int | None = None):
    """Greedy exact division of the denominator by binomials 1 - L^a t^b.

    Returns (factors, remainder) where factors is a list of (a, b) pairs
    ordered by the scan (large b first) and remainder is the t-polynomial
    left over, 1 when the denominator splits completely."""
    den = ttrim(fn.den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if b_bound is None:
        b_bound = max(len(den) - 1, 1)
    factors = []
    progress = True
    while progress and len(den) > 1:
        progress = False
        for b in range(min(b_bound, len(den) - 1), 0, -1):
            hit = False
            for a in range(a_bound, -1, -1):
                quotient = divide_binomial(den, a, b)
                if quotient is not None and quotient:
                    factors.append((a, b))
                    den = quotient
                    hit = True
                    break
            if hit:
                progress = True
                break
    factors.sort(key=lambda ab: (-ab[1], -ab[0]))
    return factors, den
