"""Polynomial systems whose F_q-solutions are the points of generalized
arc spaces and auto-arc spaces.

Substituting the generic algebra element X_k = sum_a w_{k,a} e_a for
each ambient variable of the target into each target generator, and
expanding through the multiplication table, yields one equation per
basis coefficient.  Equations are kept over Z (denominators cleared,
integer content deliberately kept) and specialized per prime at count
time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .jetalg import JetAlgebra, build_jet_algebra
from .symbolics.grammar import parse_poly
from .symbolics.mpoly import MPoly, clear_denominators


@dataclass(frozen=True)
class EquationSystem:
    """unknowns in block order (all coordinates of the first ambient
    variable, then the second, ...); equations over Z in those unknowns."""

    unknowns: tuple
    equations: tuple
    meta: dict

    @property
    def nvars(self):
        return len(self.unknowns)

    def reduce_mod(self, p):
        return tuple(eq.reduce_mod(p) for eq in self.equations)

    def to_json(self) -> str:
        doc = {
            "unknowns": list(self.unknowns),
            "equations": [eq.render() for eq in self.equations],
            "meta": self.meta,
        }
        return json.dumps(doc, separators=(", ", ": "))

    @classmethod
    def from_json(cls, text) -> "EquationSystem":
        doc = json.loads(text)
        unknowns = tuple(doc["unknowns"])
        eqs = tuple(parse_poly(s, unknowns) for s in doc["equations"])
        return cls(unknowns=unknowns, equations=eqs, meta=doc["meta"])


@dataclass(frozen=True)
class SystemStats:
    unknowns: int
    equations: int
    max_degree: int
    first_use: tuple  # per equation: last unknown position it involves


def system_stats(system: EquationSystem) -> SystemStats:
    first_use = []
    maxdeg = 0
    for eq in system.equations:
        maxdeg = max(maxdeg, eq.total_degree())
        used = eq.variables_used()
        first_use.append(used[-1] if used else -1)
    return SystemStats(
        unknowns=system.nvars,
        equations=len(system.equations),
        max_degree=maxdeg,
        first_use=tuple(first_use),
    )


_BLOCK_NAMES = ("u", "v", "w")


def _block_name(k, nblocks):
    if k < len(_BLOCK_NAMES):
        return _BLOCK_NAMES[k]
    return f"z{k}"


def _generic_vectors(algebra: JetAlgebra, nblocks: int):
    d = algebra.dim
    names = []
    for k in range(nblocks):
        blk = _block_name(k, nblocks)
        names.extend(f"{blk}{a}" for a in range(d))
    names = tuple(names)
    vectors = []
    for k in range(nblocks):
        vec = []
        for a in range(d):
            exps = [0] * len(names)
            exps[k * d + a] = 1
            vec.append({tuple(exps): Fraction(1)})
        vectors.append(vec)
    return names, vectors


def _dict_add(dst, src, scale):
    for e, c in src.items():
        s = dst.get(e, 0) + c * scale
        if s:
            dst[e] = s
        else:
            dst.pop(e, None)


def _dict_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _vec_mul(u, v, algebra):
    d = algebra.dim
    out = [dict() for _ in range(d)]
    for a in range(d):
        pa = u[a]
        if not pa:
            continue
        for b in range(d):
            pb = v[b]
            if not pb:
                continue
            expansion = algebra.products[a][b]
            if not expansion:
                continue
            prod = _dict_mul(pa, pb)
            for c, s in expansion:
                _dict_add(out[c], prod, Fraction(s))
    return out


def build_nabla_system(
    algebra: JetAlgebra,
    generators,
    ambient_vars=("x", "y"),
    meta_target=None,
) -> EquationSystem:
    """Equations for morphisms from the fat point Spec(algebra) into the
    affine target cut out by the generators (empty list = affine space)."""
    ambient_vars = tuple(ambient_vars)
    gens = list(generators)
    for g in gens:
        if tuple(g.variables) != ambient_vars:
            raise ValueError("generator variables do not match the ambient list")
    names, vectors = _generic_vectors(algebra, len(ambient_vars))
    nv = len(names)
    zero_exps = (0,) * nv

    equations = []
    for g in gens:
        caches = [dict() for _ in range(len(ambient_vars))]
        acc = [dict() for _ in range(algebra.dim)]
        for exps, coeff in sorted(g.terms.items()):
            term = [dict() for _ in range(algebra.dim)]
            term[0] = {zero_exps: Fraction(coeff)}
            for k, e in enumerate(exps):
                if not e:
                    continue
                pw = _power_of_generator(vectors[k], e, algebra, caches[k])
                term = _vec_mul(term, pw, algebra)
            for c in range(algebra.dim):
                _dict_add(acc[c], term[c], Fraction(1))
        for c in range(algebra.dim):
            if acc[c]:
                eq, _ = clear_denominators(names, acc[c])
                if algebra.char:
                    eq = eq.reduce_mod(algebra.char)
                if not eq.is_zero():
                    equations.append(eq)

    meta = {
        "source": f"{algebra.source.render()} @ n={algebra.level}",
        "target": meta_target or (
            "A^%d" % len(ambient_vars) if not gens else
            "V(" + "; ".join(g.render() for g in gens) + ")"
        ),
        "n": algebra.level,
        "source_length": algebra.dim,
    }
    return EquationSystem(unknowns=names, equations=tuple(equations), meta=meta)


def _power_of_generator(vec, e, algebra, cache):
    if e in cache:
        return cache[e]
    if e == 1:
        cache[1] = vec
        return vec
    prev = _power_of_generator(vec, e - 1, algebra, cache)
    cache[e] = _vec_mul(prev, vec, algebra)
    return cache[e]


def build_auto_arc_system(f: MPoly, n: int) -> EquationSystem:
    """Equations whose F-points are the auto-arc space at level n: the
    target is the jet itself, so the curve equation is joined by the
    images of all degree-n monomials (the generators of (x,y)^n)."""
    algebra = build_jet_algebra(f, n)
    gens = [f]
    for i in range(n, -1, -1):
        j = n - i
        gens.append(MPoly.monomial(("x", "y"), (i, j)))
    system = build_nabla_system(algebra, gens, ("x", "y"), meta_target="auto")
    meta = dict(system.meta)
    meta["target"] = f"auto: {f.render()} @ n={n}"
    return EquationSystem(system.unknowns, system.equations, meta)
