"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Criteria 1 and 2 include reference cells for the cuspidal cubic at levels
n >= 4 that no point count can reach: every solution of the level-n auto
system has the constant coordinates of both images forced to zero, so
the space embeds in A^(2*l(n)-2) and its count over F_q is at most
q^(2*l(n)-2).  At (n=4, q=2) that bound is 4096 < 8192, and at
(n=5, q=2) it is 65536 < 98304.  The affected cells are kept exactly as
stated and marked strict-xfail; the honest counts (768, 32805,
3515625, 3072) are pinned by naive enumeration in test_zeta.py and in
crosschecks here.
"""

import pytest

from conftest import CUSP_FORM_TEXT
from oracles import naive_count
from zetalab.branches import (
    branch_multiplicity_sum,
    multiplicity,
    puiseux_expand,
    semigroup_conductor,
    verify_uniformization,
)
from zetalab.cli import main as cli_main
from zetalab.counter import count_auto_arc, count_points
from zetalab.homsys import build_auto_arc_system, build_nabla_system
from zetalab.jetalg import build_jet_algebra, classical_jet_algebra, hilbert_samuel
from zetalab.symbolics import (
    ClassPoly,
    parse_lt_expr,
    parse_poly,
    pade_reconstruct,
    series_of_rational,
)
from zetalab.zeta import pole_candidates, smoothness_test, verify_decomposition, zeta_truncation

BIG = 10**13


def report(cid, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"ACCEPTANCE {cid}: {status}{suffix}")


def expected_cell(coeffs, n, q, length):
    value = coeffs[n - 1].eval(q) * q**length
    assert value.denominator == 1
    return value.numerator


def test_criterion_01_cusp_closed_form_levels_1_to_3():
    cusp = parse_poly("y^2 - x^3")
    form = parse_lt_expr(CUSP_FORM_TEXT)
    coeffs = series_of_rational(form, 4).coeffs
    ok = True
    for n in (1, 2, 3):
        length = build_jet_algebra(cusp, n).dim
        for q in (2, 3, 5):
            got = count_auto_arc(cusp, n, q).count
            want = expected_cell(coeffs, n, q, length)
            cell_ok = got == want
            ok = ok and cell_ok
            print(f"  cell n={n} q={q}: count={got} expected={want} "
                  f"{'ok' if cell_ok else 'MISMATCH'}")
    # concrete anchor cells from the statement
    assert count_auto_arc(cusp, 3, 2).count == 128
    assert count_auto_arc(cusp, 3, 5).count == 78125
    report("1 (n<=3)", ok)
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="level-4 reference values exceed the q^(2*l-2) dimension bound; "
    "honest counts are 768 / 32805 / 3515625 (see tests/test_zeta.py and "
    "the module docstring)",
)
def test_criterion_01_cusp_closed_form_level_4():
    cusp = parse_poly("y^2 - x^3")
    cells = {2: 8192, 3: 3188646, 5: 4882812500}
    ok = True
    for q, want in cells.items():
        got = count_auto_arc(cusp, 4, q).count
        cell_ok = got == want
        ok = ok and cell_ok
        print(f"  cell n=4 q={q}: count={got} expected={want} "
              f"{'ok' if cell_ok else 'MISMATCH'}")
    report("1 (n=4)", ok)
    assert ok


@pytest.mark.xfail(
    strict=True,
    reason="98304 exceeds the bound 2^(2*l(5)-2) = 65536; the honest count "
    "is 3072 (naive enumeration over 2^18 assignments)",
)
def test_criterion_02_stretch_cell_level_5():
    cusp = parse_poly("y^2 - x^3")
    got = count_auto_arc(cusp, 5, 2).count
    assert naive_count(build_auto_arc_system(cusp, 5), 2) == got
    report("2", got == 98304, f"count={got} expected=98304")
    assert got == 98304


def test_criterion_03_smooth_case():
    smooth = parse_poly("y - x^2")
    ok = True
    for n in range(1, 6):
        for q in (2, 3, 5):
            got = count_auto_arc(smooth, n, q).count
            ok = ok and got == q ** (n - 1)
    exit_code = cli_main(
        ["zeta", "--curve", "y-x^2", "--nmax", "5", "--primes", "2,3,5",
         "--verify", "L^-1/(1-t)"]
    )
    ok = ok and exit_code == 0
    report("3", ok, f"verify exit code {exit_code}")
    assert ok


def test_criterion_04_decomposition_theorem():
    cusp = parse_poly("y^2 - x^3")
    rep = verify_decomposition(cusp, 3, (2, 3, 5))
    cells = {(c.n, c.q): c for c in rep.cells if c.n in (2, 3)}
    ok = all(c.ok for c in cells.values())
    c22 = cells[(2, 2)]
    ok = ok and (c22.nabla, c22.auto) == (20, 16)
    c32 = cells[(3, 2)]
    ok = ok and (c32.nabla, c32.auto) == (144, 128)
    for (n, q), c in sorted(cells.items()):
        print(f"  cell n={n} q={q}: {c.nabla} = "
              f"({c.curve_points}-1)*{q}^(l-1) + {c.auto}  {'ok' if c.ok else 'FAIL'}")
    report("4", ok)
    assert ok


def test_criterion_05_smoothness_decision():
    primes9 = (2, 3, 5, 7, 11, 13, 17, 19, 23)
    primes7 = primes9[:7]
    ok = True
    for curve in ("y - x^2", "y - x"):
        rep = zeta_truncation(parse_poly(curve), 4, primes9, mode="fit", budget=BIG)
        smooth, witness = smoothness_test(rep)
        print(f"  {curve}: smooth={smooth}")
        ok = ok and smooth and witness is None
    for curve in ("y^2 - x^3", "x*y", "y^2 - x^2 - x^3"):
        rep = zeta_truncation(parse_poly(curve), 2, primes7, mode="fit", budget=BIG)
        smooth, witness = smoothness_test(rep)
        print(f"  {curve}: smooth={smooth} witness={witness}")
        ok = ok and not smooth and witness == (2, ClassPoly.lpow(1))
    report("5", ok)
    assert ok


def test_criterion_06_pade_rationality_witness():
    # reconstruction needs num_deg + den_deg + 1 = 12 coefficients of the
    # parsed closed form; counting past level 3 cannot certify them
    form = parse_lt_expr(CUSP_FORM_TEXT)
    series = series_of_rational(form, 12)
    rec = pade_reconstruct(series, 7, 4)
    ok = rec is not None and rec.same_function(form)
    factors, remainder = pole_candidates(rec)
    ok = ok and factors == [(1, 3), (0, 1)]
    ok = ok and len(remainder) == 1 and remainder[0].is_monomial()
    report("6", ok, f"poles={factors}")
    assert ok


def test_criterion_07_hilbert_samuel_multiplicities():
    suite = {
        "y^2 - x^3": 2,
        "x*y": 2,
        "y^2 - x^2 - x^3": 2,
        "y^3 - x^4": 3,
        "y^3 - x^5": 3,
        "y - x^2": 1,
    }
    ok = True
    for curve, want in suite.items():
        f = parse_poly(curve)
        e0 = hilbert_samuel(f, 6).e0
        mult = multiplicity(f)
        good = e0 == want == mult
        ok = ok and good
        print(f"  {curve}: e0={e0} mult={mult} expected={want}")
    report("7", ok)
    assert ok


def test_criterion_08_branch_analysis():
    ok = True

    cusp = parse_poly("y^2 - x^3")
    brs = puiseux_expand(cusp, 50)
    ok = ok and len(brs) == 1
    ok = ok and brs[0].x_dict() == {2: 1} and brs[0].y_dict() == {3: 1}
    ok = ok and verify_uniformization(cusp, brs[0], 50)
    print(f"  cusp: {len(brs)} branch, verified to t^50")

    node = parse_poly("x*y")
    node_brs = puiseux_expand(node, 6)
    ok = ok and {(b.render_x(), b.render_y()) for b in node_brs} == {
        ("0", "t"), ("t", "0")
    }

    nodal = parse_poly("y^2 - x^2 - x^3")
    nodal_brs = puiseux_expand(nodal, 6)
    ok = ok and len(nodal_brs) == 2
    ok = ok and all(verify_uniformization(nodal, b, 6) for b in nodal_brs)

    for f, brs in ((cusp, brs), (node, node_brs), (nodal, nodal_brs)):
        total, match = branch_multiplicity_sum(f, brs)
        ok = ok and match
        print(f"  {f.render()}: branch multiplicity sum {total}, matches={match}")

    conductors = {"y^2 - x^3": ((2, 3), 2), "y^2 - x^5": ((2, 5), 4), "y^3 - x^4": ((3, 4), 6)}
    for curve, (gens, cond) in conductors.items():
        sg = semigroup_conductor(puiseux_expand(parse_poly(curve), 16))
        good = sg.generators == gens and sg.conductor == cond
        ok = ok and good
        print(f"  {curve}: semigroup {sg.generators}, conductor {sg.conductor}")

    report("8", ok)
    assert ok


def _oracle_battery():
    systems = []
    for curve in ("y^2 - x^3", "x*y", "y - x^2", "y^2 - x^2 - x^3"):
        f = parse_poly(curve)
        for n in (1, 2, 3):
            systems.append((f"auto {curve} n={n}", build_auto_arc_system(f, n)))
        for n in (1, 2):
            systems.append(
                (f"nabla {curve} n={n}",
                 build_nabla_system(build_jet_algebra(f, n), [f]))
            )
            systems.append(
                (f"classical {curve} n={n}",
                 build_nabla_system(classical_jet_algebra(n), [f]))
            )
    return systems


def test_criterion_09_oracle_equivalence():
    ok = True
    checked = 0
    for name, system in _oracle_battery():
        for q in (2, 3):
            space = q ** len(system.unknowns)
            if space > 2**16:
                continue
            want = naive_count(system, q)
            for workers in (1, 2, 8):
                got = count_points(system, q, workers=workers).count
                if got != want:
                    ok = False
                    print(f"  MISMATCH {name} q={q} workers={workers}: "
                          f"{got} != {want}")
            checked += 1
    # one run at the full 2^20 search-space bound
    smooth5 = build_auto_arc_system(parse_poly("y - x^2"), 5)
    big = naive_count(smooth5, 2)
    for workers in (1, 2, 8):
        ok = ok and count_points(smooth5, 2, workers=workers).count == big
    cusp3 = build_auto_arc_system(parse_poly("y^2 - x^3"), 3)
    want = naive_count(cusp3, 3)  # 3^10 assignments
    for workers in (1, 2, 8):
        ok = ok and count_points(cusp3, 3, workers=workers).count == want
    report("9", ok, f"{checked + 2} systems, workers 1/2/8")
    assert ok


def test_criterion_10_node_fit():
    node = parse_poly("x*y")
    rep = zeta_truncation(
        node, 3, (2, 3, 5, 7, 11, 13, 17), mode="fit", budget=BIG, workers=4
    )
    rows = rep.rows
    ok = rows[0].coeff == ClassPoly.lpow(-1) and rows[0].certain
    ok = ok and rows[1].coeff == ClassPoly.lpow(1) and rows[1].certain
    for row in rows:
        consistent = row.cls is not None and row.verified and not row.note
        ok = ok and consistent
        print(f"  n={row.n}: class={row.cls} certain={row.certain} "
              f"consistent={consistent}")
    report("10", ok)
    assert ok
