from fractions import Fraction

import pytest
import sympy as sp

from biweier.bipoly import parse_bipoly, parse_form
from biweier.curvemodel import CurveError, make_rational
from biweier.exactalg import form_multiplicity
from biweier.wronskian import (
    ParameterLocus,
    branch_data,
    expected_xi_degree,
    formula_checks,
    gap_sequence,
    loci_of,
    omega,
    point_table,
    singular_loci,
    weierstrass_records,
    xi,
    xi_general,
)
from biweier.report import point_text
from helpers import curve32, family, golden_param, sym_form, sym_wronskian

f = parse_form
C32 = curve32()


def proportional_forms(g, h):
    return g.normalized() == h.normalized() and g.degree == h.degree


# --- omega -----------------------------------------------------------------------


def test_omega_10_at_2_1():
    G = omega(C32, (1, 0))(2, 1)
    target = parse_bipoly("4*x0 + x1", (1, 0))
    assert G * target.coeff(1, 0, 0, 0) == target * G.coeff(1, 0, 0, 0)


def test_omega_11_matches_displayed_form():
    # s^2 t [s^5(s-t) x0y0 + s^2 t^3 (2s-5t) x0y1 + s^3 t (2s^2-6st+5t^2) x1y0 + t^4 (s^2-3st+t^2) x1y1]
    shown = [f("s^7*t*(s - t)"), f("s^4*t^4*(2*s - 5*t)"), f("s^5*t^2*(2*s^2 - 6*s*t + 5*t^2)"), f("s^2*t^5*(s^2 - 3*s*t + t^2)")]
    W = omega(C32, (1, 1))
    ratio = None
    for got, want in zip(W.forms, shown):
        assert got.degree == want.degree
        for x, y in zip(got.coeffs, want.coeffs):
            if y:
                ratio = ratio or x / y
                assert x == ratio * y
            else:
                assert x == 0
    assert ratio == -480


def test_omega_11_vanishes_at_the_two_degenerate_parameters():
    W = omega(C32, (1, 1))
    for st in ((0, 1), (1, 0)):
        with pytest.raises(CurveError, match="vanishes identically"):
            W(*st)


def test_omega_11_golden_point():
    from helpers import sqrt6_field
    from biweier.oneone import OneOneCurve

    r6 = sqrt6_field()
    G = omega(C32, (1, 1))(Fraction(1), golden_param())
    gold = (Fraction(3125), r6 * 21000 + 51500, -(r6 * 7500 + 17500), r6 * 7344 + 17996)
    assert OneOneCurve.from_bipoly(G).proportional_to(gold)


def test_omega_diagonal_rejected():
    diag = make_rational(*(f(x) for x in ("s", "t", "s", "t")))
    with pytest.raises(CurveError):
        omega(diag, (1, 1))


# --- xi ------------------------------------------------------------------------------


def test_xi_golden():
    x10, x01, x11 = (xi(C32, sy) for sy in ((1, 0), (0, 1), (1, 1)))
    assert x10 == f("2*s*(s - 2*t)")
    assert x01 == f("-9*s^2*t^2")
    assert x11 == f("-77760*s^4*t^2*(2*s^2 - 8*s*t + 5*t^2)")


@pytest.mark.parametrize("system", [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)])
def test_xi_matches_sympy_wronskian(system):
    got = xi_general(C32, *system)
    assert sp.expand(sym_form(got) - sym_wronskian(C32, *system)) == 0


def test_xi_general_reproduces_small_systems():
    for sy in ((1, 0), (0, 1), (1, 1)):
        assert proportional_forms(xi_general(C32, *sy), xi(C32, sy))


def test_xi_other_curve_matches_sympy():
    C = make_rational(f("s^2 + t^2"), f("s*t - t^2"), f("s^3 - 2*t^3"), f("s^2*t + s*t^2"))
    for sy in ((1, 0), (0, 1), (1, 1)):
        assert sp.expand(sym_form(xi(C, sy)) - sym_wronskian(C, *sy)) == 0
        assert xi(C, sy).degree == expected_xi_degree(C, *sy)


def test_xi_family_examples():
    C = family(2, 3)
    w = xi(C, (1, 1))
    assert w.degree == 8 and w.coeffs[4] != 0 and sum(1 for c in w.coeffs if c) == 1
    D = family(3, 4)
    w = xi_general(D, 2, 1)
    assert w.degree == 36 and w.coeffs[18] != 0 and sum(1 for c in w.coeffs if c) == 1


def test_xi_degenerate_system():
    C = make_rational(f("s"), f("t"), f("s^2"), f("t^2"))
    with pytest.raises(CurveError, match="degenerate"):
        xi_general(C, 2, 1)


def test_xi_degrees_on_test_curves():
    for C in (C32, family(2, 3), family(3, 4), family(2, 5)):
        a, b = C.a, C.b
        assert xi(C, (1, 0)).degree == 2 * (b - 1)
        assert xi(C, (0, 1)).degree == 2 * (a - 1)
        assert xi(C, (1, 1)).degree == 4 * (a + b - 3)


# --- loci, gap sequences, branch data ----------------------------------------------


def test_locus_of_parameter():
    assert ParameterLocus.at(0, 1).at_infinity
    L = ParameterLocus.at(Fraction(1), golden_param())
    assert L.factor == f("2*s^2 - 8*s*t + 5*t^2")


def test_gap_sequence_examples():
    cusp = ParameterLocus(f("s"))
    g = gap_sequence(C32, cusp, 1, 1)
    assert g.h == (0, 2, 3, 5) and g.weight == 4
    g = gap_sequence(C32, ParameterLocus(f("t")), 0, 1)
    assert g.h == (0, 3) and g.weight == 2
    g = gap_sequence(C32, ParameterLocus.at(1, 2), 1, 1)
    assert g.h == (0, 1, 2, 3) and g.weight == 0


def test_gap_weight_equals_xi_order_everywhere():
    for C in (C32, family(2, 3)):
        for sy in ((1, 0), (0, 1), (1, 1)):
            w = xi(C, sy)
            for L, m in loci_of(w):
                assert gap_sequence(C, L, *sy).weight == m
                assert form_multiplicity(w, L.factor) == m


def test_branch_data_examples():
    bd = branch_data(C32, ParameterLocus(f("s")))
    assert (bd.m, bd.l, bd.membership) == (2, 3, "J")
    bd = branch_data(C32, ParameterLocus(f("t")))
    assert (bd.m, bd.l, bd.membership) == (1, 3, "J")


def test_node_branches():
    (node,) = [L for L in singular_loci(C32) if L.degree == 2]
    bd = branch_data(C32, node)
    assert (bd.m, bd.tangent_fiber, bd.c, bd.membership) == (1, None, 3, "I")
    assert node.factor == f("s^2 - s*t + t^2")


def test_weierstrass_records_examples():
    recs = {(r.point.affine() if r.point.is_rational() else None, r.count): r.weight for r in weierstrass_records(C32, (1, 0))}
    assert sorted(recs.values()) == [1, 1]
    recs11 = weierstrass_records(C32, (1, 1))
    weights = sorted((r.weight, r.count) for r in recs11)
    assert weights == [(1, 2), (2, 1), (4, 1)]
    assert sum(r.total for r in recs11) == 8


@pytest.mark.parametrize("ab", [(2, 3), (3, 4), (2, 5), (3, 5)])
def test_family_records_are_the_two_cusps(ab):
    C = family(*ab)
    for sy in ((1, 0), (0, 1), (1, 1)):
        if sy == (1, 0) and C.b < 2 or sy == (0, 1) and C.a < 2:
            continue
        recs = weierstrass_records(C, sy)
        assert len(recs) == 2
        assert recs[0].weight == recs[1].weight


# --- per-point table and checks ------------------------------------------------


def test_point_table_example():
    rows = {}
    for r in point_table(C32):
        key = point_text(r.point) if r.count == 1 else "algebraic"
        rows[key] = (r.count, r.delta, r.weights[(1, 0)], r.weights[(0, 1)], r.weights[(1, 1)])
        assert r.weights == r.gap_weights
    assert rows["(1:0;1:0)"][1:] == (1, 1, 2, 4)
    assert rows["(0:1;0:1)"][1:] == (0, 0, 2, 2)
    assert rows["algebraic"] == (2, 0, 0, 0, 1)
    assert rows["(-1:4;1:8)"][1:] == (0, 1, 0, 0)
    assert rows["(-1:1;-1:1)"][1:] == (1, 0, 0, 0)
    assert len(rows) == 5


def test_formula_checks_all_pass_on_examples():
    for C in (C32, family(2, 3), family(3, 4)):
        checks = formula_checks(C, point_table(C))
        assert checks and all(c.ok for c in checks), [c for c in checks if not c.ok]
