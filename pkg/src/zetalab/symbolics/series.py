"""Truncated series and rational functions in t over Z[L, L^-1].

A t-polynomial is a tuple of ClassPoly coefficients indexed by t-degree
with trailing zeros trimmed.  RationalFn keeps an exact num/den pair in
a deterministic normal form; series expansion and Pade reconstruction
work over the fraction field Q(L) and land back in ClassPoly
coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .classpoly import ClassPoly
from .lfrac import LFrac, pdivmod, pgcd, pmul


class NonLaurentCoefficient(ValueError):
    pass


class NotExpandable(ValueError):
    pass


# -- t-polynomial helpers ----------------------------------------------------


def ttrim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def tadd(a, b):
    n = max(len(a), len(b))
    out = [ClassPoly.zero()] * n
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return ttrim(out)


def tneg(a):
    return tuple(-c for c in a)


def tmul(a, b):
    if not a or not b:
        return ()
    out = [ClassPoly.zero()] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c.is_zero():
            continue
        for j, d in enumerate(b):
            out[i + j] = out[i + j] + c * d
    return ttrim(out)


def divide_binomial(tpoly, a, b):
    """Exact division of a t-polynomial by (1 - L^a t^b); None if inexact."""
    if not tpoly:
        return ()
    deg = len(tpoly) - 1
    la = ClassPoly.lpow(a)
    q = []
    for i in range(deg + 1):
        qi = tpoly[i] if i < len(tpoly) else ClassPoly.zero()
        if i - b >= 0:
            qi = qi + la * q[i - b]
        q.append(qi)
    for i in range(max(deg - b + 1, 0), deg + 1):
        if not q[i].is_zero():
            return None
    return ttrim(q[: max(deg - b + 1, 0)])


# -- truncated series ---------------------------------------------------------


@dataclass(frozen=True)
class ZetaTruncation:
    """The first `order` coefficients of a power series in t."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def render(self):
        return "(" + ", ".join(c.render() for c in self.coeffs) + ")"

    def __str__(self):
        return self.render()


def subseries_extract(series: ZetaTruncation, r: int, offset: int = 0) -> ZetaTruncation:
    """Keep the coefficients at indices offset, offset+r, offset+2r, ..."""
    if r < 1:
        raise ValueError("step must be >= 1")
    if not 0 <= offset < r:
        raise ValueError("offset must lie in [0, r)")
    return ZetaTruncation(tuple(series.coeffs[offset::r]))


# -- rational functions --------------------------------------------------------


class RationalFn:
    """num/den with t-polynomial entries over Z[L, L^-1].

    Normal form: joint integer content removed, the smallest L-exponent
    across both sides shifted to zero, and the sign fixed so that the
    lowest nonzero denominator coefficient has positive lowest L-term.
    """

    def __init__(self, num, den=None):
        num = ttrim(num)
        den = ttrim(den if den is not None else (ClassPoly.const(1),))
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = 0
        mexp = None
        for c in list(num) + list(den):
            for e, v in c.terms.items():
                g = gcd(g, abs(v))
                mexp = e if mexp is None else min(mexp, e)
        if num or den:
            if g > 1 or (mexp is not None and mexp != 0):
                shift = -(mexp or 0)
                num = tuple(
                    ClassPoly({e + shift: v // g for e, v in c.terms.items()})
                    for c in num
                )
                den = tuple(
                    ClassPoly({e + shift: v // g for e, v in c.terms.items()})
                    for c in den
                )
        lead = den[0] if den else None
        for c in den:
            if not c.is_zero():
                lead = c
                break
        if lead.terms[min(lead.terms)] < 0:
            num = tneg(num)
            den = tneg(den)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def const(cls, cp):
        if isinstance(cp, int):
            cp = ClassPoly.const(cp)
        return cls((cp,))

    @classmethod
    def t_power(cls, k):
        return cls(tuple([ClassPoly.zero()] * k + [ClassPoly.const(1)]))

    def is_zero(self):
        return not self.num

    # arithmetic (used by the expression parser)

    def __add__(self, other):
        return RationalFn(
            tadd(tmul(self.num, other.den), tmul(other.num, self.den)),
            tmul(self.den, other.den),
        )

    def __neg__(self):
        return RationalFn(tneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RationalFn(tmul(self.num, other.num), tmul(self.den, other.den))

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(tmul(self.num, other.den), tmul(self.den, other.num))

    def __pow__(self, k):
        if k < 0:
            return RationalFn(self.den, self.num) ** (-k)
        out = RationalFn.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RationalFn)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def same_function(self, other) -> bool:
        """Equality in the fraction field Q(L)(t): cross-multiply."""
        return tmul(self.num, other.den) == tmul(other.num, self.den)

    # rendering

    def render(self):
        num = _render_tpoly(self.num)
        if len(self.den) == 1 and self.den[0] == ClassPoly.const(1):
            return num
        return f"({num}) / ({_render_tpoly(self.den)})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RationalFn({self.render()!r})"


def _render_tpoly(coeffs):
    if not coeffs:
        return "0"
    bits = []
    for k, c in enumerate(coeffs):
        if c.is_zero():
            continue
        tp = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        neg = False
        if len(c.terms) == 1:
            ((e, v),) = c.terms.items()
            neg = v < 0
            body = ClassPoly({e: abs(v)}).render()
            if tp:
                body = tp if body == "1" else f"{body}*{tp}"
        else:
            body = f"({c.render()})"
            if tp:
                body = f"{body}*{tp}"
        if not bits:
            bits.append(f"-{body}" if neg else body)
        else:
            bits.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(bits) if bits else "0"


# -- series expansion -----------------------------------------------------------


def series_of_rational(fn: RationalFn, order: int) -> ZetaTruncation:
    """First `order` coefficients of the power-series expansion, exact.

    Every coefficient must simplify to a Laurent polynomial in L;
    otherwise NonLaurentCoefficient is raised.  A denominator with zero
    constant term has no expansion at all and raises NotExpandable.
    """
    if not fn.den or fn.den[0].is_zero():
        raise NotExpandable("denominator constant term is zero")
    d0 = LFrac.from_classpoly(fn.den[0])
    coeffs = []
    for k in range(order):
        acc = LFrac.from_classpoly(
            fn.num[k] if k < len(fn.num) else ClassPoly.zero()
        )
        for j in range(1, min(k, len(fn.den) - 1) + 1):
            acc = acc - LFrac.from_classpoly(fn.den[j]) * LFrac.from_classpoly(coeffs[k - j])
        acc = acc / d0
        cp = acc.to_classpoly()
        if cp is None:
            raise NonLaurentCoefficient(
                f"coefficient of t^{k} is not a Laurent polynomial in L"
            )
        coeffs.append(cp)
    return ZetaTruncation(tuple(coeffs))


# -- Pade reconstruction -----------------------------------------------------------


def pade_reconstruct(series: ZetaTruncation, num_deg: int, den_deg: int):
    """Find num/den of degrees <= (num_deg, den_deg) matching the whole
    truncation; returns None when the linear system admits no such fit.

    The linear system for the denominator is solved exactly over Q(L) by
    Gaussian elimination, pivoting on the lowest-degree nonzero entry of
    each column; free unknowns are set to zero.
    """
    T = series.order
    if T < num_deg + den_deg + 1:
        raise ValueError(
            f"need at least {num_deg + den_deg + 1} coefficients, got {T}"
        )
    c = [LFrac.from_classpoly(cp) for cp in series.coeffs]

    rows = []
    rhs = []
    for i in range(num_deg + 1, T):
        rows.append(
            [c[i - j] if 0 <= i - j < T else LFrac.zero() for j in range(1, den_deg + 1)]
        )
        rhs.append(-c[i])

    sol = _solve_lowest_degree_pivot(rows, rhs, den_deg)
    if sol is None:
        return None
    dvec = [LFrac.one()] + sol
    nvec = []
    for i in range(num_deg + 1):
        acc = LFrac.zero()
        for j in range(0, min(i, den_deg) + 1):
            acc = acc + dvec[j] * c[i - j]
        nvec.append(acc)

    fn = _clear_to_rationalfn(nvec, dvec)
    if series_of_rational(fn, T).coeffs != series.coeffs:
        return None
    return fn


def _solve_lowest_degree_pivot(rows, rhs, nunk):
    rows = [list(r) for r in rows]
    rhs = list(rhs)
    where = [None] * nunk
    used = [False] * len(rows)
    for col in range(nunk):
        best = None
        for r in range(len(rows)):
            if used[r] or rows[r][col].is_zero():
                continue
            key = (rows[r][col].complexity(), r)
            if best is None or key < best[0]:
                best = (key, r)
        if best is None:
            continue
        r = best[1]
        used[r] = True
        where[col] = r
        piv = rows[r][col]
        for r2 in range(len(rows)):
            if r2 == r or rows[r2][col].is_zero():
                continue
            factor = rows[r2][col] / piv
            for c2 in range(nunk):
                rows[r2][c2] = rows[r2][c2] - factor * rows[r][c2]
            rhs[r2] = rhs[r2] - factor * rhs[r]
    for r in range(len(rows)):
        if not used[r] and not rhs[r].is_zero():
            if all(rows[r][c2].is_zero() for c2 in range(nunk)):
                return None
    # Gauss-Jordan left each pivot row with entries only in its own pivot
    # column and in free columns; free unknowns are zero, so one pass does it.
    sol = [LFrac.zero()] * nunk
    for col in range(nunk):
        r = where[col]
        if r is not None:
            sol[col] = rhs[r] / rows[r][col]
    return sol


def _clear_to_rationalfn(nvec, dvec):
    """Multiply Q(L) coefficient vectors by a common polynomial to land
    in ClassPoly coefficients."""
    from fractions import Fraction

    denpoly = [Fraction(1)]
    for f in list(nvec) + list(dvec):
        if f.is_zero():
            continue
        g = pgcd(denpoly, f.den)
        denpoly = pmul(denpoly, pdivmod(f.den, g)[0])
    ncls = [_lfrac_times_poly(f, denpoly) for f in nvec]
    dcls = [_lfrac_times_poly(f, denpoly) for f in dvec]
    lcm_int = 1
    for c in ncls + dcls:
        for v in c.values():
            if v.denominator != 1:
                lcm_int = lcm_int * v.denominator // gcd(lcm_int, v.denominator)
    num = tuple(ClassPoly({e: int(v * lcm_int) for e, v in c.items()}) for c in ncls)
    den = tuple(ClassPoly({e: int(v * lcm_int) for e, v in c.items()}) for c in dcls)
    return RationalFn(num, den)


def _lfrac_times_poly(f, poly):
    """(f * poly) must be polynomial; return {exp: Fraction}."""
    if f.is_zero():
        return {}
    q, r = pdivmod(pmul(f.num, poly), f.den)
    if r:
        raise ArithmeticError("denominator clearing failed")
    return {i: c for i, c in enumerate(q) if c}
