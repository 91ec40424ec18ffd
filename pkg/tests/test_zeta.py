import pytest

from conftest import CUSP_FORM_TEXT
from oracles import naive_count
from zetalab.homsys import build_auto_arc_system
from zetalab.symbolics import ClassPoly, parse_lt_expr, parse_poly
from zetalab.zeta import (
    Inconclusive,
    curve_point_count,
    pole_candidates,
    smoothness_test,
    theta_truncation,
    verify_decomposition,
    zeta_truncation,
)

BIG = 10**13


def L(e, c=1):
    return ClassPoly({e: c})


def test_smooth_verify_passes():
    rep = zeta_truncation(
        parse_poly("y - x^2"), 5, (2, 3, 5),
        mode="verify", closed_form=parse_lt_expr("L^-1/(1-t)"),
    )
    assert rep.ok
    assert all(r.verified for r in rep.rows)


def test_cusp_verify_matches_reference_form_through_level3():
    rep = zeta_truncation(
        parse_poly("y^2 - x^3"), 3, (2, 3, 5),
        mode="verify", closed_form=parse_lt_expr(CUSP_FORM_TEXT),
    )
    assert rep.ok
    assert [r.coeff for r in rep.rows] == [L(-1), L(1), L(2)]


def test_cusp_reference_form_fails_at_level4_with_exact_numbers():
    # the reference formula predicts 8192 at (n=4, q=2); the honest
    # count of the level-4 auto-arc space is 768 (naive enumeration)
    cusp = parse_poly("y^2 - x^3")
    assert naive_count(build_auto_arc_system(cusp, 4), 2) == 768
    rep = zeta_truncation(
        cusp, 4, (2, 3),
        mode="verify", closed_form=parse_lt_expr(CUSP_FORM_TEXT),
    )
    assert not rep.ok
    assert (4, 2, "8192", 768) in rep.mismatches
    assert (4, 3, "3188646", 32805) in rep.mismatches


def test_verify_mode_wrong_form_gives_witness_row():
    rep = zeta_truncation(
        parse_poly("y^2 - x^3"), 3, (2, 3),
        mode="verify", closed_form=parse_lt_expr("L^-1/(1-t)"),
    )
    assert not rep.ok
    assert rep.rows[0].verified
    assert not rep.rows[1].verified
    assert rep.mismatches[0][0] == 2


def test_fit_mode_cusp_low_levels():
    rep = zeta_truncation(
        parse_poly("y^2 - x^3"), 3, (2, 3, 5, 7, 11, 13, 17),
        mode="fit", budget=BIG,
    )
    rows = rep.rows
    assert rows[0].cls == ClassPoly.const(1) and rows[0].certain
    assert rows[0].coeff == L(-1)
    assert rows[1].cls == L(4) and rows[1].certain
    assert rows[1].coeff == L(1)
    # all seven counts are q^7, but seven samples cannot pin a
    # degree-7 class against the ten-unknown bound: flagged uncertain
    assert rows[2].counts == {q: q**7 for q in (2, 3, 5, 7, 11, 13, 17)}
    assert not rows[2].certain
    assert rows[2].verified
    assert rep.ok


def test_fit_mode_verifies_counts_against_class():
    rep = zeta_truncation(parse_poly("x*y"), 2, (2, 3, 5, 7, 11, 13, 17), mode="fit")
    for row in rep.rows:
        assert row.verified
        for q, count in row.counts.items():
            value = row.coeff.eval(q) * q**row.length
            assert value == count


def test_fit_mode_normalization_calibration(curves):
    # the level-1 auto-arc space is one point: c0 = L^-1 for every curve
    for f in curves.values():
        rep = zeta_truncation(f, 1, (2, 3, 5), mode="fit")
        assert rep.rows[0].coeff == L(-1)


def test_node_fit_headline_coefficients():
    rep = zeta_truncation(
        parse_poly("x*y"), 2, (2, 3, 5, 7, 11, 13, 17), mode="fit"
    )
    assert rep.rows[0].coeff == L(-1) and rep.rows[0].certain
    assert rep.rows[1].cls == L(4)
    assert rep.rows[1].coeff == L(1) and rep.rows[1].certain


def test_fit_skips_infeasible_primes():
    rep = zeta_truncation(
        parse_poly("x*y"), 3, (2, 3, 5, 7, 11, 13, 17), mode="fit", budget=10**10
    )
    row = rep.rows[2]  # 10 unknowns: 11^10, 13^10, 17^10 all exceed 1e10
    assert set(row.skipped) == {11, 13, 17}
    assert set(row.counts) == {2, 3, 5, 7}


def test_flagged_primes_recorded():
    rep = zeta_truncation(parse_poly("y^2 - x^3"), 2, (2, 3, 5), mode="fit")
    assert rep.rows[0].flagged == (2,)  # multiplicity 2


def test_theta_curve_jets_cusp():
    rep = theta_truncation(
        parse_poly("y^2 - x^3"), source="curve-jets", nmax=2, primes=(2,), mode="fit"
    )
    assert rep.rows[1].counts[2] == 20


def test_theta_classical_jets_cusp():
    rep = theta_truncation(
        parse_poly("y^2 - x^3"), source="classical-jets", nmax=2, primes=(5,), mode="fit"
    )
    assert rep.rows[1].counts[5] == 45
    assert rep.rows[1].length == 2


def test_theta_smooth_fibration():
    rep = theta_truncation(
        parse_poly("y - x^2"), source="curve-jets", nmax=3, primes=(3,), mode="fit"
    )
    assert rep.rows[2].counts[3] == 27  # |C(F_3)| * 3^(l-1) = 3 * 9


def test_theta_classical_smooth_equals_curve_class_times_zeta():
    # for a smooth germ the classical series has every coefficient [C] L^-1
    rep = theta_truncation(
        parse_poly("y - x^2"), source="classical-jets", nmax=3,
        primes=(2, 3, 5, 7, 11, 13, 17), mode="fit", budget=BIG,
    )
    for row in rep.rows:
        assert row.coeff == ClassPoly.const(1)  # [C] = L, so [C] L^-1 = 1


def test_curve_point_count():
    assert curve_point_count(parse_poly("y^2 - x^3"), 2) == 2
    assert curve_point_count(parse_poly("y^2 - x^3"), 3) == 3
    assert curve_point_count(parse_poly("y^2 - x^3"), 5) == 5
    assert curve_point_count(parse_poly("x*y"), 5) == 9


def test_decomposition_cusp_grid():
    rep = verify_decomposition(parse_poly("y^2 - x^3"), 3, (2, 3, 5))
    assert rep.ok
    cells = {(c.n, c.q): c for c in rep.cells}
    assert cells[(2, 3)].nabla == 99
    assert cells[(2, 3)].auto == 81
    assert cells[(3, 2)].nabla == 144
    assert cells[(3, 2)].auto == 128
    assert cells[(2, 2)].nabla == 20 and cells[(2, 2)].auto == 16


def test_decomposition_smooth_collapses():
    rep = verify_decomposition(parse_poly("y - x^2"), 3, (2, 3))
    assert rep.ok
    # over a smooth germ auto = q^(l-1), so nabla = |C| q^(l-1)
    for c in rep.cells:
        assert c.auto == c.q ** (0 if c.n == 1 else c.n - 1)
        assert c.nabla == c.curve_points * c.auto


def test_decomposition_warns_on_other_singular_points():
    # y^2 - x^2(x+1)^2 is singular at (0,0) and (-1,0)
    f = parse_poly("y^2 - x^2*(x+1)^2")
    rep = verify_decomposition(f, 1, (3,))
    assert rep.warnings


def test_smoothness_true_for_smooth():
    rep = zeta_truncation(
        parse_poly("y - x^2"), 3,
        (2, 3, 5, 7, 11, 13, 17), mode="fit", budget=BIG,
    )
    smooth, witness = smoothness_test(rep)
    assert smooth and witness is None


@pytest.mark.parametrize("curve", ["y^2 - x^3", "x*y", "y^2 - x^2 - x^3"])
def test_smoothness_witness_at_level2(curve):
    rep = zeta_truncation(
        parse_poly(curve), 2, (2, 3, 5, 7, 11, 13, 17), mode="fit"
    )
    smooth, witness = smoothness_test(rep)
    assert not smooth
    assert witness == (2, L(1))


def test_smoothness_inconclusive_without_certainty():
    rep = zeta_truncation(parse_poly("y - x^2"), 3, (2, 3, 5), mode="fit")
    with pytest.raises(Inconclusive):
        smoothness_test(rep)


def test_pole_candidates_reference_denominator():
    fn = parse_lt_expr("1/((1-L*t^3)*(1-t))")
    factors, remainder = pole_candidates(fn)
    assert factors == [(1, 3), (0, 1)]
    assert remainder == (ClassPoly.const(1),)


def test_pole_candidates_double_pole():
    fn = parse_lt_expr("1/((1-t)*(1-t))")
    factors, remainder = pole_candidates(fn)
    assert factors == [(0, 1), (0, 1)]
    assert remainder == (ClassPoly.const(1),)


def test_pole_candidates_irreducible_remainder():
    fn = parse_lt_expr("1/(1+t)")
    factors, remainder = pole_candidates(fn)
    assert factors == []
    assert remainder == (ClassPoly.const(1), ClassPoly.const(1))


def test_report_json_schema():
    rep = zeta_truncation(
        parse_poly("y^2 - x^3"), 2, (2, 3, 5),
        mode="verify", closed_form=parse_lt_expr(CUSP_FORM_TEXT),
    )
    doc = rep.to_json_dict()
    assert doc["normalization"] == "L^{-d*l(n)} t^{n-1}"
    assert doc["rows"][0]["counts"] == {"2": 1, "3": 1, "5": 1}
    assert doc["rows"][1]["coeff"] == "L"
    assert doc["rows"][1]["verified"] is True
