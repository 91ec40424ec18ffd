"""Finite jet algebras of plane curve germs at the origin.

The level-n jet algebra of f is k[x,y]/((f) + (x,y)^n).  Because
(x,y)^n already lies in the ideal, this equals the local quotient
O_{C,O}/M_O^n, so no localization machinery is needed.  The basis is
computed by exact row reduction of {m*f truncated below degree n} over
the monomials of degree < n, pivoting on the lowest graded-lex monomial
of each row; the quotient basis is the set of non-pivot monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .symbolics.mpoly import MPoly, clear_denominators, grlex_key


class NotOnCurve(ValueError):
    pass


@dataclass(frozen=True)
class JetAlgebra:
    """Monomial basis plus multiplication table for O_{C,O}/M_O^n.

    basis holds (i, j) exponent pairs with the unit (0, 0) first.
    reduction maps every monomial of degree < n to its basis expansion
    as a tuple of (basis index, coefficient); products[a][b] is the
    expansion of e_a * e_b, already truncated by (x,y)^n.
    Coefficients are Fractions in characteristic 0 and ints mod p
    otherwise.
    """

    source: MPoly
    level: int
    char: int
    basis: tuple
    reduction: dict
    products: tuple

    @property
    def dim(self):
        return len(self.basis)

    def reduce_monomial(self, exps):
        """Basis expansion of x^i y^j, zero once the degree reaches n."""
        if sum(exps) >= self.level:
            return ()
        return self.reduction[tuple(exps)]

    def multiply(self, vec_a, vec_b):
        """Multiply two coefficient vectors in the basis."""
        zero = Fraction(0) if self.char == 0 else 0
        out = [zero] * self.dim
        for a, ca in enumerate(vec_a):
            if not ca:
                continue
            for b, cb in enumerate(vec_b):
                if not cb:
                    continue
                for c, s in self.products[a][b]:
                    out[c] += ca * cb * s
        if self.char:
            out = [v % self.char for v in out]
        return out

    def describe(self):
        return {
            "n": self.level,
            "dim": self.dim,
            "basis": ["*".join(filter(None, [
                ("x" if i == 1 else f"x^{i}" if i else ""),
                ("y" if j == 1 else f"y^{j}" if j else ""),
            ])) or "1" for i, j in self.basis],
        }


def _monomials_below(n):
    out = [(i, j) for i in range(n) for j in range(n) if i + j < n]
    out.sort(key=grlex_key)
    return out


def build_jet_algebra(f: MPoly, n: int, char: int = 0) -> JetAlgebra:
    """Jet algebra of the curve f = 0 at the origin, truncation level n."""
    if n < 1:
        raise ValueError("jet level must be >= 1")
    if f.is_zero():
        raise ValueError("curve polynomial is zero")
    if tuple(f.variables) != ("x", "y"):
        raise ValueError("jet algebras are built over the variables (x, y)")
    c0 = f.coefficient((0, 0))
    if (c0 % char if char else c0) != 0:
        raise NotOnCurve("point not on curve -- translate first")

    monos = _monomials_below(n)
    col = {m: i for i, m in enumerate(monos)}
    width = len(monos)

    rows = []
    for m in monos:
        rowpoly = {}
        for e, c in f.terms.items():
            t = (e[0] + m[0], e[1] + m[1])
            if t[0] + t[1] < n:
                rowpoly[t] = rowpoly.get(t, 0) + c
        vec = [0] * width
        nonzero = False
        for t, c in rowpoly.items():
            if char:
                c %= char
            if c:
                vec[col[t]] = Fraction(c) if char == 0 else c
                nonzero = True
        if nonzero:
            rows.append(vec)

    pivots = _row_reduce(rows, width, char)

    basis = tuple(m for m in monos if col[m] not in pivots)
    index = {m: a for a, m in enumerate(basis)}

    reduction = {}
    for m in monos:
        j = col[m]
        if j in pivots:
            row = pivots[j]
            expansion = []
            for j2 in range(width):
                if j2 == j or not row[j2]:
                    continue
                coeff = -row[j2] if char == 0 else (-row[j2]) % char
                expansion.append((index[monos[j2]], coeff))
            reduction[m] = tuple(expansion)
        else:
            one = Fraction(1) if char == 0 else 1
            reduction[m] = ((index[m], one),)

    products = []
    for a, (i1, j1) in enumerate(basis):
        rowp = []
        for b, (i2, j2) in enumerate(basis):
            t = (i1 + i2, j1 + j2)
            if t[0] + t[1] >= n:
                rowp.append(())
            else:
                rowp.append(reduction[t])
        products.append(tuple(rowp))

    return JetAlgebra(
        source=f,
        level=n,
        char=char,
        basis=basis,
        reduction=reduction,
        products=tuple(products),
    )


def _row_reduce(rows, width, char):
    """Reduced echelon form, pivot = first (lowest graded-lex) nonzero
    column of each remaining row.  Returns {pivot column: reduced row}."""
    pivots = {}
    for vec in rows:
        vec = list(vec)
        while True:
            j = next((k for k in range(width) if vec[k]), None)
            if j is None:
                break
            if j in pivots:
                c = vec[j]
                prow = pivots[j]
                if char:
                    for k in range(j, width):
                        if prow[k]:
                            vec[k] = (vec[k] - c * prow[k]) % char
                else:
                    for k in range(j, width):
                        if prow[k]:
                            vec[k] -= c * prow[k]
                continue
            inv = pow(vec[j], -1, char) if char else 1 / vec[j]
            if char:
                vec = [v * inv % char for v in vec]
            else:
                vec = [v * inv for v in vec]
            pivots[j] = vec
            break
    # eliminate each pivot column from every other pivot row
    for j in sorted(pivots):
        prow = pivots[j]
        for j2, row in pivots.items():
            if j2 == j or not row[j]:
                continue
            c = row[j]
            if char:
                pivots[j2] = [(a - c * b) % char for a, b in zip(row, prow)]
            else:
                pivots[j2] = [a - c * b for a, b in zip(row, prow)]
    return pivots


def classical_jet_algebra(n: int, char: int = 0) -> JetAlgebra:
    """The algebra k[t]/(t^n), realized as the jet algebra of y = 0."""
    line = MPoly(("x", "y"), {(0, 1): 1})
    return build_jet_algebra(line, n, char)


def shift_to_origin(f: MPoly, point) -> MPoly:
    """Translate so the given rational point lands at the origin.

    When the shift introduces denominators the result is scaled by their
    lcm, which changes nothing about the germ (a nonzero rational scalar
    is a unit)."""
    a, b = (Fraction(v) for v in point)
    if f.eval((a, b)) != 0:
        raise NotOnCurve(f"point ({a}, {b}) is not on the curve")
    shifted, _ = clear_denominators(f.variables, f.translated((a, b)))
    return shifted


@dataclass(frozen=True)
class HilbertSamuelFit:
    """Linear tail of the length function l(n) = dim of the level-n jet
    algebra: l(n) = e0*n + e1 for n >= stable_from."""

    lengths: tuple
    e0: int
    e1: int
    stable_from: int

    @property
    def nmax(self):
        return len(self.lengths)


def hilbert_samuel(f: MPoly, nmax: int) -> HilbertSamuelFit:
    if nmax < 3:
        raise ValueError("need nmax >= 3 to fit a linear tail")
    lengths = tuple(build_jet_algebra(f, n).dim for n in range(1, nmax + 1))
    e0 = lengths[-1] - lengths[-2]
    e1 = lengths[-1] - e0 * nmax
    stable = nmax - 1
    while stable > 1 and lengths[stable - 2] == e0 * (stable - 1) + e1:
        stable -= 1
    return HilbertSamuelFit(lengths=lengths, e0=e0, e1=e1, stable_from=stable)
