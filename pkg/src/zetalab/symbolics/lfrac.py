"""The fraction field Q(L), used as exact scalar field by the Pade
solver and the series expander.

Elements are stored as a reduced pair of ordinary polynomials in L with
Fraction coefficients (dense lists, constant term first).  Negative
powers of L enter through the ClassPoly embedding and come back out of
to_classpoly when the reduced denominator is a monomial.
"""

from __future__ import annotations

from fractions import Fraction

from .classpoly import ClassPoly


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def pneg(a):
    return [-c for c in a]


def pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if not c:
            continue
        for j, d in enumerate(b):
            if d:
                out[i + j] += c * d
    return _trim(out)


def pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    while len(r) >= len(b):
        c = r[-1] * inv
        k = len(r) - len(b)
        q[k] = c
        for i, d in enumerate(b):
            r[i + k] -= c * d
        _trim(r)
        if not r:
            break
    return _trim(q), r


def pgcd(a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, pdivmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = [c * inv for c in a]
    return a


class LFrac:
    """A reduced fraction of Q[L] polynomials; denominator is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        den = [Fraction(1)] if den is None else list(den)
        num = list(num)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(L)")
        if num:
            g = pgcd(num, den)
            if len(g) > 1:
                num = pdivmod(num, g)[0]
                den = pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = [c / lead for c in num]
                den = [c / lead for c in den]
        else:
            den = [Fraction(1)]
        self.num = num
        self.den = den

    @classmethod
    def zero(cls):
        return cls([])

    @classmethod
    def one(cls):
        return cls([Fraction(1)])

    @classmethod
    def from_classpoly(cls, cp: ClassPoly) -> "LFrac":
        if cp.is_zero():
            return cls.zero()
        shift = min(cp.min_exp(), 0)
        num = [Fraction(0)] * (cp.max_exp() - shift + 1)
        for e, c in cp.terms.items():
            num[e - shift] = Fraction(c)
        den = [Fraction(0)] * (-shift) + [Fraction(1)]
        return cls(num, den)

    def is_zero(self):
        return not self.num

    def __add__(self, other):
        return LFrac(
            padd(pmul(self.num, other.den), pmul(other.num, self.den)),
            pmul(self.den, other.den),
        )

    def __neg__(self):
        return LFrac(pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return LFrac(pmul(self.num, other.num), pmul(self.den, other.den))

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(L)")
        return LFrac(pmul(self.num, other.den), pmul(self.den, other.num))

    def __eq__(self, other):
        return (
            isinstance(other, LFrac) and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def complexity(self):
        """Pivot-selection measure: prefer low-degree entries."""
        return (len(self.num) - 1 if self.num else 0) + len(self.den) - 1

    def to_classpoly(self):
        """Return the ClassPoly equal to this fraction, or None."""
        if not self.num:
            return ClassPoly.zero()
        nz = [i for i, c in enumerate(self.den) if c]
        if len(nz) != 1:
            return None
        k = nz[0]
        c = self.den[k]
        terms = {}
        for i, a in enumerate(self.num):
            if a:
                v = a / c
                if v.denominator != 1:
                    return None
                terms[i - k] = v.numerator
        return ClassPoly(terms)

    def __repr__(self):
        return f"LFrac({self.num}, {self.den})"
