"""Exact F_q-solution counting by pruned backtracking enumeration.

Variables are assigned in unknown order.  Every equation carries a
chain of partially-substituted states, one per depth at which one of
its variables is assigned; an equation is checked the moment its
residual becomes constant -- at its last variable at the latest, but
usually much earlier, because assigned values wipe out whole blocks of
monomials.  Once no undischarged equation remains in a subtree, the
remaining variables are free and the subtree contributes a power of q
without being walked.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from .homsys import EquationSystem, build_auto_arc_system, build_nabla_system
from .jetalg import build_jet_algebra
from .symbolics.fp import is_prime
from .symbolics.mpoly import MPoly

DEFAULT_BUDGET = 10**10


class BudgetExceeded(RuntimeError):
    def __init__(self, budget, nodes):
        super().__init__(f"node budget {budget} exceeded ({nodes} nodes visited)")
        self.budget = budget
        self.nodes = nodes


@dataclass(frozen=True)
class CountResult:
    q: int
    count: int
    nodes_visited: int
    elapsed: float
    partitions: int


class _CompiledEq:
    __slots__ = ("evars", "monos", "transitions", "const_at", "nonconst_at", "states")

    def __init__(self, terms, q):
        # terms: list of (coeff mod q, full exponent tuple)
        used = sorted({i for _, e in terms for i, x in enumerate(e) if x})
        self.evars = used
        restricted = {}
        for c, e in terms:
            key = tuple(e[i] for i in used)
            restricted[key] = (restricted.get(key, 0) + c) % q
        stage0 = sorted(k for k, c in restricted.items() if c)
        stages = [stage0]
        transitions = []
        for s in range(len(used)):
            nxt = sorted({m[1:] for m in stages[s]})
            idx = {m: i for i, m in enumerate(nxt)}
            cur = {m: i for i, m in enumerate(stages[s])}
            transitions.append(
                tuple((cur[m], m[0], idx[m[1:]]) for m in stages[s])
            )
            stages.append(nxt)
        self.monos = stages
        self.transitions = transitions
        self.const_at = []
        self.nonconst_at = []
        for stage in stages:
            ci = None
            nc = []
            for i, m in enumerate(stage):
                if any(m):
                    nc.append(i)
                else:
                    ci = i
            self.const_at.append(ci)
            self.nonconst_at.append(tuple(nc))
        self.states = [[0] * len(stage) for stage in stages]
        init = self.states[0]
        cur = {m: i for i, m in enumerate(stage0)}
        for m, c in restricted.items():
            if m in cur:
                init[cur[m]] = c


class _Compiled:
    __slots__ = ("q", "nvars", "eqs", "at_depth", "powtab", "qpow", "unsat")

    def __init__(self, system: EquationSystem, q: int):
        self.q = q
        self.nvars = system.nvars
        self.eqs = []
        self.unsat = False
        maxexp = 1
        for eq in system.equations:
            terms = []
            const = 0
            for e, c in eq.terms.items():
                cm = c % q
                if not cm:
                    continue
                if any(e):
                    terms.append((cm, e))
                    maxexp = max(maxexp, max(e))
                else:
                    const = (const + cm) % q
            if not terms:
                if const:
                    self.unsat = True
                continue
            if const:
                terms.append((const, (0,) * self.nvars))
            self.eqs.append(_CompiledEq(terms, q))
        self.at_depth = [[] for _ in range(self.nvars)]
        for ei, ce in enumerate(self.eqs):
            for s, v in enumerate(ce.evars):
                self.at_depth[v].append((ei, s))
        self.powtab = [[pow(w, e, q) for e in range(maxexp + 1)] for w in range(q)]


def _count_compiled(comp: _Compiled, prefix, budget, progress=None):
    """Count completions of `prefix`; returns (count, nodes)."""
    q = comp.q
    n = comp.nvars
    if comp.unsat:
        return 0, 0
    if n == 0:
        return 1, 0
    qpow = [1] * (n + 1)
    for i in range(1, n + 1):
        qpow[i] = qpow[i - 1] * q

    eqs = comp.eqs
    at_depth = comp.at_depth
    powtab = comp.powtab
    active = [True] * len(eqs)
    pending = len(eqs)
    nodes = 0
    count = 0

    def enter(depth, w):
        """Substitute vars[depth] = w; returns (ok, list of discharged)."""
        nonlocal pending
        discharged = []
        for ei, s in at_depth[depth]:
            if not active[ei]:
                continue
            ce = eqs[ei]
            old = ce.states[s]
            new = ce.states[s + 1]
            for i in range(len(new)):
                new[i] = 0
            pw = powtab[w]
            for src, e, dst in ce.transitions[s]:
                v = old[src]
                if v:
                    new[dst] = (new[dst] + v * pw[e]) % q
            if any(new[i] for i in ce.nonconst_at[s + 1]):
                continue
            ci = ce.const_at[s + 1]
            if ci is not None and new[ci]:
                for ej in discharged:
                    active[ej] = True
                pending += len(discharged)
                return False, None
            active[ei] = False
            pending -= 1
            discharged.append(ei)
        return True, discharged

    def leave(discharged):
        nonlocal pending
        for ei in discharged:
            active[ei] = True
        pending += len(discharged)

    # walk the fixed prefix first; remaining prefix coordinates stay
    # fixed even when every equation has already been discharged, so a
    # task only ever counts completions of its own full prefix
    trail = []
    for depth, w in enumerate(prefix):
        nodes += 1
        ok, discharged = enter(depth, w)
        if not ok:
            return 0, nodes
        trail.append(discharged)
        if pending == 0:
            count = qpow[n - len(prefix)]
            for d in reversed(trail):
                leave(d)
            return count, nodes

    start = len(prefix)

    def rec(depth):
        nonlocal nodes, count
        for w in range(q):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget, nodes)
            ok, discharged = enter(depth, w)
            if not ok:
                continue
            if pending == 0:
                count += qpow[n - depth - 1]
            else:
                rec(depth + 1)
            leave(discharged)
        if progress is not None and depth == start:
            progress(nodes, None)

    if start == n:
        count = 1
    else:
        rec(start)
    for d in reversed(trail):
        leave(d)
    return count, nodes


_WORKER_STATE = {}


def _worker_init(system_json, q, budget):
    _WORKER_STATE["comp"] = _Compiled(EquationSystem.from_json(system_json), q)
    _WORKER_STATE["budget"] = budget


def _worker_run(prefixes):
    comp = _WORKER_STATE["comp"]
    budget = _WORKER_STATE["budget"]
    total = 0
    nodes = 0
    for prefix in prefixes:
        c, m = _count_compiled(comp, prefix, budget)
        total += c
        nodes += m
    return total, nodes


def count_points(
    system: EquationSystem,
    q: int,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    progress=None,
) -> CountResult:
    """Exact number of F_q-points of the system's solution set."""
    if not is_prime(q) or q > 2**31:
        raise ValueError(f"q = {q} must be a prime <= 2^31")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    t0 = time.perf_counter()

    if workers == 1 or system.nvars == 0:
        comp = _Compiled(system, q)
        count, nodes = _count_compiled(comp, (), budget, progress)
        return CountResult(q, count, nodes, time.perf_counter() - t0, 1)

    k = 0
    while q**k < 4 * workers and k < system.nvars:
        k += 1
    prefixes = list(product(range(q), repeat=k))
    chunks = [prefixes[i::workers] for i in range(workers) if prefixes[i::workers]]
    total = 0
    nodes = 0
    with ProcessPoolExecutor(
        max_workers=workers,
        initializer=_worker_init,
        initargs=(system.to_json(), q, budget),
    ) as pool:
        done = 0
        for c, m in pool.map(_worker_run, chunks):
            total += c
            nodes += m
            done += 1
            if progress is not None:
                progress(nodes, done)
    if nodes > budget:
        raise BudgetExceeded(budget, nodes)
    return CountResult(q, total, nodes, time.perf_counter() - t0, len(chunks))


def count_auto_arc(
    f: MPoly, n: int, q: int, workers: int = 1, budget: int = DEFAULT_BUDGET
) -> CountResult:
    return count_points(build_auto_arc_system(f, n), q, workers, budget)


def count_nabla(
    generators,
    algebra,
    q: int,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    ambient_vars=("x", "y"),
) -> CountResult:
    """Count points of the generalized arc space of an affine target.

    `generators` may be a single MPoly or a list; an empty list means
    affine space of dimension len(ambient_vars)."""
    if isinstance(generators, MPoly):
        generators = [generators]
    system = build_nabla_system(algebra, generators, ambient_vars)
    return count_points(system, q, workers, budget)
