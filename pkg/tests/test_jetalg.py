from fractions import Fraction

import pytest

from zetalab.jetalg import (
    NotOnCurve,
    build_jet_algebra,
    classical_jet_algebra,
    hilbert_samuel,
    shift_to_origin,
)
from zetalab.symbolics import parse_poly


def basis_set(algebra):
    return set(algebra.basis)


def test_cusp_level2():
    A = build_jet_algebra(parse_poly("y^2 - x^3"), 2)
    assert A.dim == 3
    assert basis_set(A) == {(0, 0), (1, 0), (0, 1)}


def test_cusp_level4_relations():
    A = build_jet_algebra(parse_poly("y^2 - x^3"), 4)
    assert A.dim == 7
    # y^2 = x^3, x*y^2 = 0, y^3 = 0
    x3 = A.basis.index((3, 0))
    assert A.reduction[(0, 2)] == ((x3, Fraction(1)),)
    assert A.reduction[(1, 2)] == ()
    assert A.reduction[(0, 3)] == ()


def test_node_level5():
    A = build_jet_algebra(parse_poly("x*y"), 5)
    assert A.dim == 9
    assert basis_set(A) == {(0, 0)} | {(i, 0) for i in range(1, 5)} | {
        (0, j) for j in range(1, 5)
    }


def test_unit_first_and_unit_law():
    A = build_jet_algebra(parse_poly("y^2 - x^3"), 4)
    assert A.basis[0] == (0, 0)
    for b in range(A.dim):
        assert A.products[0][b] == ((b, Fraction(1)),)


@pytest.mark.parametrize("curve,n", [
    ("y^2 - x^3", 4), ("x*y", 4), ("y^2 - x^2 - x^3", 4), ("y^3 - x^4", 5),
])
def test_multiplication_table_commutative_associative(curve, n):
    A = build_jet_algebra(parse_poly(curve), n)
    assert A.dim <= 12
    d = A.dim

    def vec(a):
        v = [Fraction(0)] * d
        v[a] = Fraction(1)
        return v

    for a in range(d):
        for b in range(d):
            assert A.multiply(vec(a), vec(b)) == A.multiply(vec(b), vec(a))
    for a in range(d):
        for b in range(d):
            ab = A.multiply(vec(a), vec(b))
            for c in range(d):
                bc = A.multiply(vec(b), vec(c))
                assert A.multiply(ab, vec(c)) == A.multiply(vec(a), bc)


def test_nilpotency_of_nonunit_basis():
    A = build_jet_algebra(parse_poly("y^2 - x^3"), 4)
    d = A.dim
    for a in range(1, d):
        v = [Fraction(0)] * d
        v[a] = Fraction(1)
        acc = v
        for _ in range(d - 1):
            acc = A.multiply(acc, v)
        assert all(c == 0 for c in acc)


def test_lengths_monotone_and_start_at_one(curves):
    for f in curves.values():
        prev = 0
        for n in range(1, 6):
            d = build_jet_algebra(f, n).dim
            assert d >= prev
            if n == 1:
                assert d == 1
            prev = d


def test_full_power_ideal_below_multiplicity():
    # below the multiplicity the curve contributes no relations
    f = parse_poly("y^3 - x^5")
    for n in (1, 2, 3):
        assert build_jet_algebra(f, n).dim == n * (n + 1) // 2


def test_smooth_lengths_linear():
    f = parse_poly("y - x^2")
    for n in range(1, 6):
        assert build_jet_algebra(f, n).dim == n


def test_classical_jet_algebra_is_truncated_line():
    A = classical_jet_algebra(4)
    assert A.dim == 4
    assert basis_set(A) == {(i, 0) for i in range(4)}


def test_mod_p_agrees_with_rational_reduction():
    for curve in ("y^2 - x^3", "x*y", "y^2 - x^2 - x^3"):
        f = parse_poly(curve)
        for p in (2, 3, 5):
            for n in (2, 3, 4):
                A0 = build_jet_algebra(f, n)
                Ap = build_jet_algebra(f, n, char=p)
                assert A0.basis == Ap.basis
                for a in range(A0.dim):
                    for b in range(A0.dim):
                        t0 = {
                            c: s for c, s in A0.products[a][b]
                            if Fraction(s) % p != 0
                        }
                        tp = dict(Ap.products[a][b])
                        assert {c: Fraction(s) % p for c, s in t0.items()} == {
                            c: Fraction(s) for c, s in tp.items()
                        }


def test_not_on_curve():
    with pytest.raises(NotOnCurve):
        build_jet_algebra(parse_poly("y^2 - x^3 + 1"), 3)


def test_shift_to_origin_expansion():
    f = parse_poly("y^2 - x^3 + x^2")
    g = shift_to_origin(f, (1, 0))
    assert g == parse_poly("y^2 - x^3 - 2*x^2 - x")


def test_shift_identity():
    f = parse_poly("x*y")
    assert shift_to_origin(f, (0, 0)) == f


def test_shift_diagonal_invariance():
    f = parse_poly("y - x")
    assert shift_to_origin(f, (2, 2)) == f


def test_shift_off_curve_rejected():
    with pytest.raises(NotOnCurve):
        shift_to_origin(parse_poly("y^2 - x^3"), (1, 2))


def test_shift_rational_point_scales_minimally():
    f = parse_poly("y - x^3")
    g = shift_to_origin(f, (Fraction(1, 2), Fraction(1, 8)))
    # 4*(y + 1/8 - (x + 1/2)^3) = 4y - 4x^3 - 6x^2 - 3x
    assert g == parse_poly("4*y - 4*x^3 - 6*x^2 - 3*x")


def test_hilbert_samuel_cusp():
    fit = hilbert_samuel(parse_poly("y^2 - x^3"), 6)
    assert fit.lengths == (1, 3, 5, 7, 9, 11)
    assert (fit.e0, fit.e1) == (2, -1)
    assert fit.stable_from == 1


def test_hilbert_samuel_node():
    fit = hilbert_samuel(parse_poly("x*y"), 5)
    assert fit.lengths == (1, 3, 5, 7, 9)
    assert (fit.e0, fit.e1) == (2, -1)


def test_hilbert_samuel_smooth():
    fit = hilbert_samuel(parse_poly("y - x^2"), 4)
    assert fit.lengths == (1, 2, 3, 4)
    assert (fit.e0, fit.e1) == (1, 0)


def test_hilbert_samuel_needs_three_levels():
    with pytest.raises(ValueError):
        hilbert_samuel(parse_poly("x*y"), 2)
