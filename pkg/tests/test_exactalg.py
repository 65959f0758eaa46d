from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from biweier.bipoly import parse_form
from biweier.exactalg import (
    BinaryForm,
    FieldElt,
    Poly,
    field_generator,
    form_multiplicity,
    gcd_forms,
    irreducible_factorization,
    minimal_polynomial,
    poly_gcd,
    squarefree_factorization,
)
from helpers import S, T, sqrt6_field, sym_form

f = parse_form


def test_gcd_common_factor():
    assert gcd_forms(f("s^2 - t^2"), f("s - t")) == f("s - t")


def test_gcd_coprime_coordinates():
    assert gcd_forms(f("s"), f("t")) == f("1")


def test_gcd_of_xi_pair():
    assert gcd_forms(f("2*s^2 - 4*s*t"), f("-9*s^2*t^2")) == f("s")


def test_gcd_zero_forms_error():
    with pytest.raises(ValueError, match="gcd of zero forms"):
        gcd_forms(BinaryForm.zero(), BinaryForm.zero())


def test_squarefree_factorization_multiplicities():
    g = f("-77760*s^4*t^2*(2*s^2 - 8*s*t + 5*t^2)")
    sf = {str(h): m for h, m in squarefree_factorization(g)}
    assert sf.get("s") == 4
    assert 2 in sf.values()


def test_irreducible_factorization_xi11():
    g = f("-77760*s^4*t^2*(2*s^2 - 8*s*t + 5*t^2)")
    got = {str(h): m for h, m in irreducible_factorization(g)}
    assert got == {"s": 4, "t": 2, "2*s^2 - 8*s*t + 5*t^2": 1}


def test_factorization_splits_over_q():
    got = sorted(m for _, m in irreducible_factorization(f("(s - t)^2*(s + 2*t)^3*(s^2 + t^2)")))
    assert got == [1, 2, 3]


@pytest.mark.parametrize(
    "text",
    ["(s^2 - 2*t^2)*(s^3 - 3*t^3)", "s^4 + t^4", "(s^2 + s*t + t^2)^2*(s - 5*t)", "6*s^5 - 11*s^3*t^2 + 3*s*t^4"],
)
def test_factorization_matches_sympy(text):
    g = f(text)
    ours = sorted((h.degree, m) for h, m in irreducible_factorization(g))
    _, facs = sp.factor_list(sym_form(g), S, T)
    theirs = sorted((sp.Poly(h, S, T).total_degree(), m) for h, m in facs if sp.Poly(h, S, T).total_degree() > 0)
    assert ours == theirs


def test_form_multiplicity():
    assert form_multiplicity(f("s^3*(s - t)"), f("s")) == 3
    assert form_multiplicity(f("s^3*(s - t)"), f("t")) == 0


def test_field_inverse_in_sqrt6():
    r6 = sqrt6_field()
    x = r6 * 3 + 2
    assert x * x.inverse() == 1
    assert r6 * r6 == 6


def test_minimal_polynomial_of_golden_parameter():
    m = Poly([Fraction(2), Fraction(-8), Fraction(5)]).monic()
    u = field_generator(m)
    assert minimal_polynomial(u) == m
    assert minimal_polynomial(u * u).degree == 2


def test_dehomogenize_convention():
    # index k multiplies s^(d-k) t^k, dehomogenized at s = 1
    g = f("s^2 + 3*s*t - 2*t^2")
    assert g.coeffs == (1, 3, -2)
    assert g.dehomogenize() == Poly([Fraction(1), Fraction(3), Fraction(-2)])


rats = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


@settings(max_examples=60, deadline=None)
@given(st.lists(rats, min_size=1, max_size=6), st.lists(rats, min_size=1, max_size=6), st.lists(rats, min_size=1, max_size=4))
def test_poly_gcd_divides_and_matches_sympy(a, b, c):
    A, B, Cc = Poly(a), Poly(b), Poly(c)
    if not A or not B or not Cc:
        return
    g = poly_gcd(A * Cc, B * Cc)
    u = sp.Symbol("u")
    sa = sp.Poly([sp.Rational(x.numerator, x.denominator) for x in reversed((A * Cc).c)], u)
    sb = sp.Poly([sp.Rational(x.numerator, x.denominator) for x in reversed((B * Cc).c)], u)
    assert g.degree == sp.gcd(sa, sb).degree()
    assert (A * Cc) % g == Poly() and (B * Cc) % g == Poly()


@settings(max_examples=60, deadline=None)
@given(rats, rats, rats, rats, rats, rats)
def test_field_axioms_in_quadratic_field(a0, a1, b0, b1, c0, c1):
    m = Poly([Fraction(-2), Fraction(0), Fraction(1)])
    x, y, z = (FieldElt(m, Poly([p, q])) for p, q in ((a0, a1), (b0, b1), (c0, c1)))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if x != 0:
        assert x * x.inverse() == 1
