"""Laurent polynomials in the symbol L with integer coefficients.

These are the only Grothendieck-ring classes this package ever needs:
every class that appears in the verified examples, and every class a
point count can detect, lies in Z[L, L^-1].  Evaluation at L = q gives
the exact point count over F_q.
"""

from __future__ import annotations

from fractions import Fraction


class ClassPoly:
    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def lpow(cls, e, c=1):
        return cls({e: c})

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                del t[e]
        return ClassPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return ClassPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return ClassPoly(t)

    __rmul__ = __mul__

    def shifted(self, k):
        """Multiply by L^k."""
        return ClassPoly({e + k: c for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = ClassPoly.const(other)
        return isinstance(other, ClassPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def min_exp(self):
        return min(self.terms) if self.terms else 0

    def max_exp(self):
        return max(self.terms) if self.terms else 0

    # -- evaluation ---------------------------------------------------------

    def eval(self, q) -> Fraction:
        q = Fraction(q)
        if q == 0 and any(e < 0 for e in self.terms):
            raise ZeroDivisionError("negative exponent of L at q = 0")
        return sum((c * q**e for e, c in self.terms.items()), Fraction(0))

    def eval_int(self, q: int) -> int:
        v = self.eval(q)
        if v.denominator != 1:
            raise ValueError(f"value {v} is not an integer")
        return v.numerator

    # -- rendering ------------------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                term = str(mag)
            else:
                lp = "L" if e == 1 else f"L^{e}"
                term = lp if mag == 1 else f"{mag}*{lp}"
            if not bits:
                bits.append(term if c > 0 else f"-{term}")
            else:
                bits.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(bits)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ClassPoly({self.render()!r})"


def _coerce(x):
    if isinstance(x, ClassPoly):
        return x
    if isinstance(x, int):
        return ClassPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to ClassPoly")


ONE = ClassPoly.const(1)
L = ClassPoly.lpow(1)


class InterpolationError(ValueError):
    pass


def interpolate_class_poly(samples, degree_bound):
    """Fit an ordinary polynomial in L through exact count samples.

    samples: iterable of (q, value) with distinct q.  Returns
    (ClassPoly, certain) where certain is True when enough samples were
    supplied to pin every coefficient up to degree_bound.  Raises
    InterpolationError when no integer polynomial of degree <= bound
    passes through all samples.
    """
    pts = [(int(q), int(v)) for q, v in samples]
    if len(pts) < 2:
        raise ValueError("need at least 2 samples")
    qs = [q for q, _ in pts]
    if len(set(qs)) != len(qs):
        raise ValueError("sample q values must be distinct")

    # Newton divided differences, exact over Q.
    coeffs = [Fraction(v) for _, v in pts]
    for j in range(1, len(pts)):
        for i in range(len(pts) - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (qs[i] - qs[i - j])
    # Horner expansion of the Newton form to the monomial basis:
    # P = c_{k} then P <- P*(L - q_i) + c_i going down.
    poly = [coeffs[-1]]
    for i in reversed(range(len(pts) - 1)):
        shifted = [Fraction(0)] + poly
        poly = [a - qs[i] * b for a, b in zip(shifted, poly + [Fraction(0)])]
        poly[0] += coeffs[i]
    while poly and poly[-1] == 0:
        poly.pop()

    degree = len(poly) - 1 if poly else 0
    if degree > degree_bound:
        raise InterpolationError(
            f"not polynomial-count at this bound: interpolant has degree "
            f"{degree} > {degree_bound}"
        )
    if any(c.denominator != 1 for c in poly):
        raise InterpolationError(
            "not polynomial-count at this bound: interpolant has "
            "non-integer coefficients"
        )
    result = ClassPoly({e: c.numerator for e, c in enumerate(poly)})
    for q, v in pts:
        if result.eval_int(q) != v:
            raise InterpolationError(f"interpolant does not reproduce sample at q={q}")
    certain = len(pts) >= degree_bound + 1
    return result, certain
