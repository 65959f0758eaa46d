from fractions import Fraction

import pytest

from biweier.bipoly import Point, parse_bipoly
from biweier.curvemodel import CurveError
from biweier.fibers import (
    CountInput,
    X,
    Y,
    count_fiber_weierstrass,
    gradient_fiber,
    hessian,
    hessian_criterion,
    is_fiber_weierstrass,
    mixed_hessian,
    osculating_fiber,
)
from helpers import curve32, curve32_implicit, family_implicit

C32 = curve32_implicit()
CUSP = Point.of(1, 0, 1, 0)
NODE = Point.of(-1, 1, -1, 1)
FLEX_Y = Point.of(0, 1, 0, 1)
FLEX_X = Point.of(-1, 4, 1, 8)


def proportional(G, H):
    keys = set(G.terms) | set(H.terms)
    k0 = next(iter(G.terms))
    if k0 not in H.terms:
        return False
    r = H.terms[k0] / G.terms[k0]
    return all(G.coeff(*k) * r == H.coeff(*k) for k in keys)


def test_osculating_fiber_examples():
    assert proportional(osculating_fiber(CUSP, X), parse_bipoly("x1", (1, 0)))
    assert proportional(osculating_fiber(FLEX_Y, Y), parse_bipoly("y0", (0, 1)))
    assert proportional(osculating_fiber(FLEX_X, X), parse_bipoly("4*x0 + x1", (1, 0)))


def test_gradient_fiber_agrees_with_osculating_fiber():
    # away from the other system's Weierstrass points the gradient form is the fiber itself
    C = curve32()
    for s, t in [(1, 2), (3, 1), (2, 5)]:
        p = C(Fraction(s), Fraction(t))
        assert proportional(gradient_fiber(C32, p, X), osculating_fiber(p, X))
        assert proportional(gradient_fiber(C32, p, Y), osculating_fiber(p, Y))


def test_is_fiber_weierstrass_examples():
    assert is_fiber_weierstrass(C32, FLEX_Y, Y)
    assert is_fiber_weierstrass(C32, NODE, X)
    assert is_fiber_weierstrass(C32, NODE, Y)
    assert not is_fiber_weierstrass(C32, FLEX_X, Y)
    assert is_fiber_weierstrass(C32, FLEX_X, X)


def test_is_fiber_weierstrass_off_curve():
    with pytest.raises(CurveError):
        is_fiber_weierstrass(C32, Point.of(1, 1, 1, 1), X)


def test_hessian_example_x():
    assert hessian(C32, X) == parse_bipoly("-4*x0^3*x1^3 - 9*x0^2*x1^4 - 6*x0*x1^5 - x1^6", (6, 0))


def test_hessian_family_y():
    assert hessian(family_implicit(2, 3), Y) == parse_bipoly("-4*y0^3*y1^3", (0, 6))


def test_hessian_bidegrees():
    C = family_implicit(3, 4)
    assert tuple(hessian(C, X).bidegree) == (6, 4)
    assert tuple(hessian(C, Y).bidegree) == (2, 8)
    assert tuple(mixed_hessian(C).bidegree) == (4, 6)


def test_hessian_undefined_for_small_type():
    C = family_implicit(1, 3)
    with pytest.raises(CurveError, match="Hessian undefined"):
        hessian(C, X)
    with pytest.raises(CurveError):
        mixed_hessian(C)


def test_mixed_hessian_family():
    assert mixed_hessian(family_implicit(2, 3)) == parse_bipoly("36*x0*x1*y0^2*y1^2", (2, 4))


def test_mixed_hessian_values():
    H = mixed_hessian(C32)
    assert H.evaluate(FLEX_X) == 0
    assert curve32()(1, 2).same_as(Point.of(2, 1, 8, 1))
    assert H.evaluate(Point.of(2, 1, 8, 1)) != 0


def test_hessian_criterion_matches_partials_on_samples():
    C = curve32()
    for s in range(-6, 7):
        for t in (1, 2, 3):
            p = C(Fraction(s), Fraction(t))
            if C32.is_singular(p):
                continue
            for d in (X, Y):
                assert hessian_criterion(C32, p, d) == is_fiber_weierstrass(C32, p, d)
            either = is_fiber_weierstrass(C32, p, X) or is_fiber_weierstrass(C32, p, Y)
            assert (mixed_hessian(C32).evaluate(p) == 0) == either


@pytest.mark.parametrize(
    "direction,ls,expected",
    [(X, (2,), 1), (Y, (3,), 2)],
)
def test_count_examples(direction, ls, expected):
    assert count_fiber_weierstrass(CountInput((3, 2), 0, ls), direction) == expected


def test_count_smooth_elliptic():
    assert count_fiber_weierstrass(CountInput((2, 2), 1, ()), X) == 4


def test_count_inconsistent():
    with pytest.raises(CurveError, match="inconsistent branch data"):
        count_fiber_weierstrass(CountInput((3, 2), 0, (9,)), X)
