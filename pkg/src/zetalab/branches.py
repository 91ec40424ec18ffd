"""Newton polygon and Puiseux analysis of a plane curve germ at the origin.

Branches are parametrized as x = t^r with y a power series in t whose
coefficients stay in Q; inputs that would force algebraic extensions
abort explicitly with the offending minimal polynomial.  Pure axis
components (x = 0 or y = 0) are split off first and reported as unit
branches.

The expansion works edge by edge: each lower-polygon edge of slope
-q/e contributes roots of its characteristic polynomial, written as
psi(rho) with rho = c^e so that conjugate parametrizations (t -> zeta t)
are never enumerated twice.  Simple roots finish with a series Newton
iteration; multiple roots recurse on the transformed germ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .symbolics.lfrac import pgcd
from .symbolics.mpoly import MPoly, grlex_key


class ExtensionRequired(ValueError):
    def __init__(self, minimal_poly):
        super().__init__(
            f"branch coefficient needs a field extension: root of {minimal_poly}"
        )
        self.minimal_poly = minimal_poly


class NotSquarefree(ValueError):
    pass


# -- basic invariants -----------------------------------------------------------


def multiplicity(f: MPoly) -> int:
    """Degree of the lowest nonzero homogeneous component at the origin."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.coefficient((0, 0)) != 0:
        raise ValueError("origin is not on the curve")
    return f.min_degree()


@dataclass(frozen=True)
class NewtonPolygon:
    support: tuple  # all (i, j) exponent pairs of f
    vertices: tuple  # lower-left hull vertices, by ascending i
    edges: tuple  # (start, end, slope) with slope a negative Fraction


def newton_polygon(f: MPoly) -> NewtonPolygon:
    if f.is_zero():
        raise ValueError("zero polynomial")
    support = tuple(sorted(f.terms, key=grlex_key))
    best = {}
    for i, j in support:
        if i not in best or j < best[i]:
            best[i] = j
    pts = sorted(best.items())  # (i, min j for that i)
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    # keep only the strictly descending (negative slope) part
    vertices = [hull[0]]
    edges = []
    for p in hull[1:]:
        prev = vertices[-1]
        if p[1] >= prev[1]:
            break
        slope = Fraction(p[1] - prev[1], p[0] - prev[0])
        edges.append((prev, p, slope))
        vertices.append(p)
    return NewtonPolygon(
        support=support, vertices=tuple(vertices), edges=tuple(edges)
    )


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


# -- branches ------------------------------------------------------------------------


@dataclass(frozen=True)
class PuiseuxBranch:
    """One branch of the germ: x = t^ram (or x = 0 for the vertical
    axis), y = sum of y_series coefficients, truncated at t^trunc."""

    x_series: tuple  # ((exp, Fraction), ...) -- {ram: 1} or empty
    y_series: tuple
    ram: int
    trunc: int
    tangent: tuple

    def x_dict(self):
        return dict(self.x_series)

    def y_dict(self):
        return dict(self.y_series)

    def branch_multiplicity(self):
        orders = [e for e, _ in self.x_series] + [e for e, _ in self.y_series]
        return min(orders)

    def render_x(self):
        return _render_series(dict(self.x_series))

    def render_y(self):
        return _render_series(dict(self.y_series))


def _render_series(s):
    if not s:
        return "0"
    bits = []
    for e in sorted(s):
        c = s[e]
        mag = abs(c)
        body = "t" if e == 1 else f"t^{e}" if e else "1"
        if mag != 1 or e == 0:
            coeff = str(mag) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            body = f"{coeff}*{body}" if e else coeff
        if not bits:
            bits.append(body if c > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(bits)


def puiseux_expand(f: MPoly, order: int):
    """All branches of the germ at the origin, with y-coefficients in Q,
    each verified against f to t^order."""
    if f.is_zero() or f.coefficient((0, 0)) != 0:
        raise ValueError("need a nonzero curve through the origin")
    r = multiplicity(f)
    if order < r:
        raise ValueError(f"truncation order {order} < multiplicity {r}")
    _squarefree_guard(f)

    work = {e: Fraction(c) for e, c in f.terms.items()}
    branches = []

    xmin = min(e[0] for e in work)
    if xmin >= 1:
        # the y-axis x = 0 is a component
        branches.append(_make_branch({}, {1: Fraction(1)}, order))
        work = {(i - 1, j): c for (i, j), c in work.items()}
    ymin = min(e[1] for e in work)
    if ymin >= 1:
        branches.append(_make_branch({1: Fraction(1)}, {}, order))
        work = {(i, j - 1): c for (i, j), c in work.items()}

    if any(i + j == 0 for i, j in work):
        pass  # remaining factor is a unit at the origin: no more branches
    else:
        for ram, yser in _expand(work, order + 1, 0):
            branches.append(
                _make_branch({ram: Fraction(1)}, yser, order)
            )

    branches = _dedupe_conjugates(branches)
    for br in branches:
        if not verify_uniformization(f, br, order):
            raise AssertionError(
                f"internal error: branch {br.render_x()}, {br.render_y()} "
                f"fails uniformization check"
            )
    return branches


def _make_branch(xser, yser, order):
    xser = {e: c for e, c in xser.items() if c}
    yser = {e: c for e, c in yser.items() if c and e <= order}
    ox = min(xser) if xser else None
    oy = min(yser) if yser else None
    if ox is None:
        tangent = (Fraction(0), Fraction(1))
    elif oy is None or oy > ox:
        tangent = (Fraction(1), Fraction(0))
    elif oy == ox:
        tangent = (Fraction(1), yser[oy])
    else:
        tangent = (Fraction(0), Fraction(1))
    return PuiseuxBranch(
        x_series=tuple(sorted(xser.items())),
        y_series=tuple(sorted(yser.items())),
        ram=ox if ox is not None else 1,
        trunc=order,
        tangent=tangent,
    )


def _dedupe_conjugates(branches):
    out = []
    for br in branches:
        dup = False
        for kept in out:
            if kept.x_series != br.x_series or kept.ram % 2:
                continue
            flipped = {e: (-c if e % 2 else c) for e, c in br.y_series}
            if flipped == kept.y_dict():
                dup = True
                break
        if not dup:
            out.append(br)
    return out


def _expand(g, prec, depth):
    """Yield (ramification, y-series dict) for every branch of g with
    y(0) = 0, where g is a {(i, j): Fraction} polynomial dict."""
    if depth > 64:
        raise NotSquarefree("expansion does not terminate; input has a repeated factor")
    results = []

    jmin = min(j for _, j in g)
    if jmin >= 1:
        results.append((1, {}))
        g = {(i, j - 1): c for (i, j), c in g.items()}
        if all(i + j == 0 for i, j in g):
            return results

    # points (j, v_j): y-degree against x-order of its coefficient
    vord = {}
    for (i, j), c in g.items():
        if j not in vord or i < vord[j]:
            vord[j] = i
    pts = sorted(vord.items())
    hull = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)

    for (jl, vl), (jr, vr) in zip(hull, hull[1:]):
        if vr >= vl:
            break  # slopes are increasing; no more negative edges
        rise = vl - vr
        run = jr - jl
        gg = gcd(rise, run)
        qq, ee = rise // gg, run // gg
        # characteristic polynomial in rho = c^ee
        psi = {}
        for k in range(gg + 1):
            j = jl + k * ee
            i = vl - k * qq
            c = g.get((i, j), Fraction(0))
            if c:
                psi[k] = c
        roots, leftover = _rational_roots(psi)
        if leftover is not None:
            raise ExtensionRequired(_render_univariate(leftover, "c", ee))
        for rho, m in roots:
            c = _rational_root_of(rho, ee)
            if c is None:
                mono = {ee: Fraction(1), 0: -rho}
                raise ExtensionRequired(_render_univariate(mono, "c", 1))
            g1 = _transform(g, ee, qq, c, prec)
            if m == 1:
                s = _implicit_series(g1, prec)
                subs = [(1, s)]
            else:
                subs = _expand(g1, prec, depth + 1)
            for e2, s2 in subs:
                ram = ee * e2
                yser = {qq * e2: c}
                for exp, coeff in s2.items():
                    if coeff:
                        yser[qq * e2 + exp] = yser.get(qq * e2 + exp, Fraction(0)) + coeff
                results.append((ram, {e: v for e, v in yser.items() if v}))
    return results


def _rational_roots(poly):
    """Rational roots (with multiplicity) of a {exp: Fraction} univariate.

    Returns (roots, leftover) where leftover is the non-split factor as
    a coefficient dict, or None when the nonzero-root part splits."""
    if not poly:
        return [], None
    shift = min(poly)
    dense = [Fraction(0)] * (max(poly) - shift + 1)
    for e, c in poly.items():
        dense[e - shift] = c
    den = 1
    for c in dense:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in dense]
    roots = []
    while len(ints) > 1:
        root = _find_rational_root(ints)
        if root is None:
            break
        m = 0
        while len(ints) > 1:
            quo, rem = _synthetic_divide(ints, root)
            if rem != 0:
                break
            ints = quo
            m += 1
        roots.append((root, m))
    if len(ints) > 1:
        leftover = {e: Fraction(c) for e, c in enumerate(ints) if c}
        return roots, leftover
    return roots, None


def _find_rational_root(ints):
    a0 = ints[0]
    an = ints[-1]
    if a0 == 0:
        return Fraction(0)  # cannot happen after the shift, kept for safety
    for p in _divisors(abs(a0)):
        for q in _divisors(abs(an)):
            for sign in (1, -1):
                cand = Fraction(sign * p, q)
                if _poly_at(ints, cand) == 0:
                    return cand
    return None


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_at(ints, x):
    acc = Fraction(0)
    for c in reversed(ints):
        acc = acc * x + c
    return acc


def _synthetic_divide(ints, root):
    """Divide by (x - root) via Horner; (quotient as ints, remainder)."""
    coeffs = [Fraction(c) for c in ints]
    quo = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for k in reversed(range(1, len(coeffs))):
        carry = coeffs[k] + carry * root
        quo[k - 1] = carry
    rem = coeffs[0] + carry * root
    if rem != 0:
        return None, rem
    den = 1
    for c in quo:
        den = den * c.denominator // gcd(den, c.denominator)
    return [int(c * den) for c in quo], 0


def _rational_root_of(rho, e):
    """Exact rational c with c^e = rho, canonical sign; None if none exists."""
    if e == 1:
        return rho
    if rho == 0:
        return Fraction(0)
    if e % 2 == 0 and rho < 0:
        return None
    num = _iroot(abs(rho.numerator), e)
    den = _iroot(abs(rho.denominator), e)
    if num is None or den is None:
        return None
    c = Fraction(num, den)
    if rho < 0:
        c = -c
    return c


def _iroot(n, e):
    if n == 0:
        return 0
    lo, hi = 1, 1
    while hi**e < n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**e < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**e == n else None


def _transform(g, e, q, c, prec):
    """g(x^e, x^q (c + y)) / x^w with the minimal order w divided out,
    then truncated beyond x^prec (higher terms cannot reach the series)."""
    out = {}
    for (i, j), coeff in g.items():
        base = e * i + q * j
        # expand (c + y)^j
        binom = 1
        for k in range(j + 1):
            term_c = coeff * binom * c ** (j - k)
            if term_c:
                key = (base, k)
                s = out.get(key, Fraction(0)) + term_c
                if s:
                    out[key] = s
                else:
                    del out[key]
            binom = binom * (j - k) // (k + 1)
    if not out:
        return {}
    w = min(i for i, _ in out)
    return {(i - w, k): v for (i, k), v in out.items() if v and i - w <= prec}


def _implicit_series(g, prec):
    """Solve g(x, s(x)) = 0 for the unique power series s with s(0) = 0;
    requires a simple root: g(0,0) = 0 and dg/dy(0,0) != 0."""
    u = g.get((0, 1), Fraction(0))
    if u == 0:
        raise NotSquarefree("expected a simple root after edge transform")
    if g.get((0, 0), Fraction(0)) != 0:
        raise AssertionError("transform lost the root at the origin")
    inv = -1 / u
    s = {}
    for _ in range(prec + 1):
        val = _eval_series(g, s, prec)
        if not val:
            break
        for e, v in val.items():
            if e <= prec:
                s[e] = s.get(e, Fraction(0)) + v * inv
        s = {e: v for e, v in s.items() if v}
    return s


def _eval_series(g, s, prec):
    """g(x, s(x)) truncated at x^prec, as {exp: Fraction}."""
    powers = {0: {0: Fraction(1)}, 1: dict(s)}
    maxj = max(j for _, j in g)
    for j in range(2, maxj + 1):
        powers[j] = _ser_mul(powers[j - 1], s, prec)
    out = {}
    for (i, j), c in g.items():
        if i > prec:
            continue
        for e, v in powers.get(j, {}).items():
            if i + e <= prec:
                out[i + e] = out.get(i + e, Fraction(0)) + c * v
    return {e: v for e, v in out.items() if v}


def _ser_mul(a, b, prec):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            if e1 + e2 <= prec:
                out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
    return {e: v for e, v in out.items() if v}


def _render_univariate(poly, name, stretch):
    den = 1
    for c in poly.values():
        f = Fraction(c)
        den = den * f.denominator // gcd(den, f.denominator)
    bits = []
    for e in sorted(poly, reverse=True):
        c = int(Fraction(poly[e]) * den)
        if not c:
            continue
        ee = e * stretch
        mag = abs(c)
        body = name if ee == 1 else f"{name}^{ee}" if ee else "1"
        if mag != 1 or ee == 0:
            body = f"{mag}*{body}" if ee else str(mag)
        if not bits:
            bits.append(body if c > 0 else f"-{body}")
        else:
            bits.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(bits)


# -- verification against the curve -----------------------------------------------------


def verify_uniformization(f: MPoly, branch: PuiseuxBranch, order: int) -> bool:
    """True iff f(x(t), y(t)) = 0 mod t^order by exact substitution."""
    if branch.trunc < order - 1:
        raise ValueError(
            f"branch truncated at {branch.trunc}, cannot verify to order {order}"
        )
    prec = order - 1
    xs = {e: Fraction(c) for e, c in branch.x_series}
    ys = {e: Fraction(c) for e, c in branch.y_series}
    xpow = {0: {0: Fraction(1)}}
    ypow = {0: {0: Fraction(1)}}
    total = {}
    for (i, j), c in f.terms.items():
        for pw, base, store in ((i, xs, xpow), (j, ys, ypow)):
            k = max(store)
            while k < pw:
                store[k + 1] = _ser_mul(store[k], base, prec)
                k += 1
        prod = _ser_mul(xpow[i], ypow[j], prec)
        for e, v in prod.items():
            total[e] = total.get(e, Fraction(0)) + c * v
    return all(v == 0 for v in total.values())


# -- squarefree guard ---------------------------------------------------------------------


def _squarefree_guard(f: MPoly):
    """Reject inputs with repeated factors, detected by a gcd in y over
    Q(x) plus a square check on the pure-x content."""
    fy = _partial_y(f)
    if not fy.is_zero():
        if _gcd_degree_in_y(f, fy) > 0:
            raise NotSquarefree("curve polynomial has a repeated factor")
    coeffs = _content_x(f)
    d = [c * e for e, c in enumerate(coeffs)][1:]
    if len(coeffs) > 1:
        g = pgcd([Fraction(c) for c in coeffs], [Fraction(c) for c in d])
        if len(g) > 1:
            raise NotSquarefree("curve polynomial has a repeated x-factor")


def _partial_y(f: MPoly) -> MPoly:
    terms = {}
    for (i, j), c in f.terms.items():
        if j:
            terms[(i, j - 1)] = terms.get((i, j - 1), 0) + c * j
    return MPoly(f.variables, terms)


def _content_x(f: MPoly):
    """gcd over j of the x-coefficient polynomials, as a dense list."""
    cols = {}
    for (i, j), c in f.terms.items():
        cols.setdefault(j, {})[i] = Fraction(c)
    g = []
    for j, col in cols.items():
        dense = [Fraction(0)] * (max(col) + 1)
        for i, c in col.items():
            dense[i] = c
        g = pgcd(g, dense) if g else dense
    return g


def _gcd_degree_in_y(f: MPoly, g: MPoly) -> int:
    """Degree in y of gcd(f, g) over the field Q(x), by Euclid with
    rational-function coefficients."""
    from .symbolics.lfrac import LFrac

    a = [LFrac(c) for c in _as_y_poly(f)]
    b = [LFrac(c) for c in _as_y_poly(g)]

    def trim(p):
        while p and p[-1].is_zero():
            p.pop()
        return p

    trim(a)
    trim(b)
    while b:
        while len(a) >= len(b):
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i in range(len(b)):
                a[i + shift] = a[i + shift] - factor * b[i]
            trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1 if a else -1


def _as_y_poly(f: MPoly):
    cols = {}
    for (i, j), c in f.terms.items():
        cols.setdefault(j, {})[i] = Fraction(c)
    if not cols:
        return []
    out = []
    for j in range(max(cols) + 1):
        col = cols.get(j, {})
        dense = [Fraction(0)] * ((max(col) + 1) if col else 0)
        for i, c in col.items():
            dense[i] = c
        out.append(dense)
    while out and not out[-1]:
        out.pop()
    return out


# -- numerical semigroup of a unibranched germ -----------------------------------------------


@dataclass(frozen=True)
class SemigroupData:
    generators: tuple
    conductor: int
    bound: int
    bound_limited: bool


def semigroup_conductor(branches, bound: int | None = None) -> SemigroupData:
    """Value semigroup data from the t-orders of the parametrization.

    Orders of monomials in the two coordinate series generate the
    semigroup; the conductor is the start of the final run of attained
    orders.  Exact for monomial parametrizations; bound_limited flags
    runs too short to certify."""
    if len(branches) != 1:
        raise ValueError("semigroup data needs a unibranched germ (one branch)")
    br = branches[0]
    orders = []
    for series in (br.x_series, br.y_series):
        if series:
            orders.append(min(e for e, _ in series))
    gens = tuple(sorted(set(o for o in orders if o > 0)))
    if not gens:
        raise ValueError("branch has no positive-order coordinate")
    g = 0
    for v in gens:
        g = gcd(g, v)
    if g != 1:
        raise ValueError(
            f"observed orders {gens} are not coprime; conductor not certifiable"
        )
    if bound is None:
        bound = gens[0] * gens[-1] + 1
    attain = [False] * (bound + 1)
    attain[0] = True
    for v in range(1, bound + 1):
        attain[v] = any(v >= g0 and attain[v - g0] for g0 in gens)
    last_gap = -1
    for v in range(bound + 1):
        if not attain[v]:
            last_gap = v
    conductor = last_gap + 1
    bound_limited = (bound - conductor) < gens[-1]
    return SemigroupData(
        generators=gens, conductor=conductor, bound=bound, bound_limited=bound_limited
    )


def branch_multiplicity_sum(f: MPoly, branches):
    """Sum of branch multiplicities and its comparison against mult(f)."""
    total = sum(br.branch_multiplicity() for br in branches)
    return total, total == multiplicity(f)


def branch_report(f: MPoly, order: int = 12) -> dict:
    """JSON-ready branch analysis of the germ at the origin."""
    branches = puiseux_expand(f, order)
    doc = {
        "multiplicity": multiplicity(f),
        "branches": [
            {
                "r": br.ram,
                "x": br.render_x(),
                "y": br.render_y(),
                "verified_to": order,
            }
            for br in branches
        ],
    }
    total, ok = branch_multiplicity_sum(f, branches)
    doc["branch_multiplicity_sum"] = total
    doc["matches_multiplicity"] = ok
    if len(branches) == 1:
        sg = semigroup_conductor(branches)
        doc["semigroup"] = {
            "gens": list(sg.generators),
            "conductor": sg.conductor,
        }
    else:
        doc["semigroup"] = None
    return doc


def branch_report_json(f: MPoly, order: int = 12) -> str:
    return json.dumps(branch_report(f, order), separators=(", ", ": "))
