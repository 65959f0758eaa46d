"""Shared curves and independent sympy-based oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

from biweier.bipoly import Point, parse_bipoly, parse_form
from biweier.curvemodel import ImplicitCurve, make_implicit, make_rational
from biweier.exactalg import FieldElt, Poly

CURVE32_PARAM = ("-s*t+t^2", "s^2", "t^3", "s^3")
CURVE32_F = "x0^3*y1^2 + 3*x0*x1^2*y0*y1 - x1^3*y0^2 + x1^3*y0*y1"

S, T = sp.symbols("s t")
X0, X1, Y0, Y1 = sp.symbols("x0 x1 y0 y1")


def curve32():
    return make_rational(*(parse_form(p) for p in CURVE32_PARAM))


def curve32_implicit() -> ImplicitCurve:
    return make_implicit(parse_bipoly(CURVE32_F, (3, 2)))


def family(a: int, b: int):
    """The family (s^b : t^b ; s^a : t^a) of type (a,b)."""
    return make_rational(*(parse_form(f"{v}^{e}") for v, e in (("s", b), ("t", b), ("s", a), ("t", a))))


def family_implicit(a: int, b: int) -> ImplicitCurve:
    return make_implicit(parse_bipoly(f"x0^{a}*y1^{b} - x1^{a}*y0^{b}", (a, b)))


def sqrt6_field():
    """Q(sqrt 6) as Q[u]/(u^2 - 6) and the element sqrt 6."""
    m = Poly([Fraction(-6), Fraction(0), Fraction(1)])
    return FieldElt(m, Poly([Fraction(0), Fraction(1)]))


def golden_param():
    """The parameter 4/5 + sqrt(6)/5 of one (1,1)-Weierstrass point of the (3,2) example curve."""
    r6 = sqrt6_field()
    return Fraction(4, 5) + r6 * Fraction(1, 5)


# ---------------------------------------------------------------------------
# sympy oracles


def sym_form(form) -> sp.Expr:
    d = form.degree
    return sp.expand(sum(sp.Rational(c.numerator, c.denominator) * S ** (d - k) * T ** k for k, c in enumerate(form.coeffs)))


def sym_bipoly(G) -> sp.Expr:
    return sp.expand(
        sum(sp.Rational(v.numerator, v.denominator) * X0 ** k[0] * X1 ** k[1] * Y0 ** k[2] * Y1 ** k[3] for k, v in G.terms.items())
    )


def sym_wronskian(C, alpha: int, beta: int) -> sp.Expr:
    """Homogeneous Wronskian of the pulled-back monomial basis, computed with sympy."""
    phi = [sym_form(f) for f in (C.phi0, C.phi1)]
    psi = [sym_form(f) for f in (C.psi0, C.psi1)]
    basis = [phi[0] ** (alpha - i) * phi[1] ** i * psi[0] ** (beta - j) * psi[1] ** j for i in range(alpha + 1) for j in range(beta + 1)]
    r = len(basis) - 1
    rows = [[sp.diff(f, S, r - k, T, k) if r else f for f in basis] for k in range(r + 1)]
    return sp.expand(sp.Matrix(rows).det(method="berkowitz"))


def sym_to_coeffs(expr: sp.Expr, degree: int):
    p = sp.Poly(expr, S, T)
    return [Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in (p.coeff_monomial(S ** (degree - k) * T ** k) for k in range(degree + 1))]


def point_of(C, s, t) -> Point:
    return C(s, t)
