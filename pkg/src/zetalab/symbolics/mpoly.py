"""Sparse multivariate polynomials over the integers.

Terms live in a dict mapping exponent tuples to nonzero integer
coefficients; zero coefficients are never stored.  The canonical term
order used everywhere (rendering, pivot selection, basis enumeration) is
graded lexicographic: total degree first, then the exponent tuple read
left to right in variable order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def grlex_key(exps):
    return (sum(exps), exps)


class MPoly:
    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean = {}
        if terms:
            for exps, c in terms.items():
                if not c:
                    continue
                e = tuple(exps)
                if len(e) != nv:
                    raise ValueError("exponent tuple length != variable count")
                if any(x < 0 for x in e):
                    raise ValueError("negative exponent in polynomial")
                clean[e] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables, {})

    @classmethod
    def const(cls, variables, c):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, variables, exps, c=1):
        return cls(variables, {tuple(exps): c})

    # -- ring structure -------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MPoly):
            raise TypeError(f"expected MPoly, got {type(other).__name__}")
        if other.variables != self.variables:
            raise ValueError("polynomials over different variable lists")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MPoly(self.variables, t)

    def __neg__(self):
        return MPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return MPoly(self.variables, t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def is_zero(self):
        return not self.terms

    # -- queries ---------------------------------------------------------

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def min_degree(self):
        """Degree of the lowest nonzero homogeneous component."""
        return min((sum(e) for e in self.terms), default=0)

    def support(self):
        return sorted(self.terms, key=grlex_key)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def variables_used(self):
        used = [False] * len(self.variables)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return tuple(i for i, u in enumerate(used) if u)

    # -- evaluation and substitution --------------------------------------

    def eval(self, values):
        """Exact evaluation at ints or Fractions (one value per variable)."""
        if len(values) != len(self.variables):
            raise ValueError("value count != variable count")
        total = 0
        for exps, c in self.terms.items():
            t = c
            for v, e in zip(values, exps):
                if e:
                    t *= v**e
            total += t
        return total

    def eval_mod(self, values, p):
        total = 0
        for exps, c in self.terms.items():
            t = c % p
            if not t:
                continue
            for v, e in zip(values, exps):
                if e:
                    t = t * pow(v, e, p) % p
            total += t
        return total % p

    def reduce_mod(self, p):
        return MPoly(self.variables, {e: c % p for e, c in self.terms.items() if c % p})

    def translated(self, point):
        """Exact substitution x_i -> x_i + a_i; returns Fraction term dict."""
        if len(point) != len(self.variables):
            raise ValueError("point length != variable count")
        shifts = [Fraction(a) for a in point]
        out = {}
        for exps, c in self.terms.items():
            parts = [{(0,) * len(exps): Fraction(c)}]
            for i, e in enumerate(exps):
                if not e:
                    continue
                # expand (x_i + a_i)^e by the binomial theorem
                binom = 1
                pw = {}
                for k in range(e + 1):
                    ek = [0] * len(exps)
                    ek[i] = e - k
                    pw[tuple(ek)] = Fraction(binom) * shifts[i] ** k
                    binom = binom * (e - k) // (k + 1)
                parts.append(pw)
            acc = parts[0]
            for pw in parts[1:]:
                nxt = {}
                for e1, c1 in acc.items():
                    for e2, c2 in pw.items():
                        e = tuple(a + b for a, b in zip(e1, e2))
                        s = nxt.get(e, 0) + c1 * c2
                        if s:
                            nxt[e] = s
                        else:
                            nxt.pop(e, None)
                acc = nxt
            for e, c in acc.items():
                s = out.get(e, 0) + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return out

    # -- rendering ---------------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in self.support():
            c = self.terms[exps]
            factors = []
            for name, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            term = "*".join(factors)
            if not bits:
                bits.append(term if c > 0 else f"-{term}")
            else:
                bits.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(bits)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MPoly({self.render()!r})"


def clear_denominators(variables, frac_terms):
    """Turn a Fraction term dict into an integer MPoly by the minimal
    positive scaling.  The integer content is deliberately kept: dividing
    by it would change the solution set in small characteristic."""
    if not frac_terms:
        return MPoly.zero(variables), 1
    denl = 1
    for c in frac_terms.values():
        denl = lcm(denl, Fraction(c).denominator)
    terms = {e: int(Fraction(c) * denl) for e, c in frac_terms.items()}
    return MPoly(variables, terms), denl


def integer_content(f: MPoly) -> int:
    g = 0
    for c in f.terms.values():
        g = gcd(g, abs(c))
    return g
