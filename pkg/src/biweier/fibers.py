"""Fiber systems (1,0) and (0,1): osculating fibers, Weierstrass criteria, Hessians, counts."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bipoly import BiDegree, BiPoly, Point
from .curvemodel import CurveError, ImplicitCurve


class FiberDirection(enum.Enum):
    X = "1,0"  # fibers x = const, type (1,0)
    Y = "0,1"  # fibers y = const, type (0,1)

    @property
    def system(self):
        return (1, 0) if self is FiberDirection.X else (0, 1)


X = FiberDirection.X
Y = FiberDirection.Y


def osculating_fiber(p: Point, direction: FiberDirection) -> BiPoly:
    """The fiber through p: a1*x0 - a0*x1 (X) or b1*y0 - b0*y1 (Y)."""
    if direction is X:
        a0, a1 = p.x
        return BiPoly(1, 0, {(1, 0, 0, 0): a1, (0, 1, 0, 0): -a0})
    b0, b1 = p.y
    return BiPoly(0, 1, {(0, 0, 1, 0): b1, (0, 0, 0, 1): -b0})


def gradient_fiber(C: ImplicitCurve, p: Point, direction: FiberDirection) -> BiPoly:
    """F_x0(p) x0 + F_x1(p) x1 (or the y analogue); zero at Weierstrass points of the other system."""
    F = C.F
    if direction is X:
        return BiPoly(1, 0, {(1, 0, 0, 0): F.partial("x0").evaluate(p), (0, 1, 0, 0): F.partial("x1").evaluate(p)})
    return BiPoly(0, 1, {(0, 0, 1, 0): F.partial("y0").evaluate(p), (0, 0, 0, 1): F.partial("y1").evaluate(p)})


def _require_on_curve(C: ImplicitCurve, p: Point):
    if not C.contains(p):
        raise CurveError(f"point {p} is not on the curve")


def is_fiber_weierstrass(C: ImplicitCurve, p: Point, direction: FiberDirection) -> bool:
    """p is an X-Weierstrass point iff F_y0(p) = F_y1(p) = 0 (and symmetrically)."""
    _require_on_curve(C, p)
    names = ("y0", "y1") if direction is X else ("x0", "x1")
    return all(not C.F.partial(v).evaluate(p) for v in names)


def hessian(C: ImplicitCurve, direction: FiberDirection) -> BiPoly:
    """F_y0y0 F_y1y1 - F_y0y1^2 for X, F_x0x0 F_x1x1 - F_x0x1^2 for Y."""
    a, b = C.bidegree
    if a < 2 or b < 2:
        raise CurveError(f"Hessian undefined for this type ({a},{b}); need a, b >= 2")
    F = C.F
    u, v = ("y0", "y1") if direction is X else ("x0", "x1")
    return F.d(u, u) * F.d(v, v) - F.d(u, v) ** 2


def hessian_criterion(C: ImplicitCurve, p: Point, direction: FiberDirection) -> bool:
    """Second-derivative test: the Hessian of the direction vanishes at p."""
    _require_on_curve(C, p)
    return not hessian(C, direction).evaluate(p)


def mixed_hessian(C: ImplicitCurve) -> BiPoly:
    """F_x0y0 F_x1y1 - F_x0y1 F_x1y0, of bidegree (2a-2, 2b-2)."""
    a, b = C.bidegree
    if a < 2 or b < 2:
        raise CurveError(f"mixed Hessian undefined for this type ({a},{b}); need a, b >= 2")
    F = C.F
    return F.d("x0", "y0") * F.d("x1", "y1") - F.d("x0", "y1") * F.d("x1", "y0")


@dataclass(frozen=True)
class CountInput:
    bidegree: BiDegree
    genus: int
    branch_l_values: tuple = ()

    def __post_init__(self):
        if self.genus < 0:
            raise CurveError("genus must be non-negative")


def count_fiber_weierstrass(data: CountInput, direction: FiberDirection) -> int:
    """Number of smooth fiber-Weierstrass points, with multiplicity.

    X: 2(b + g - 1) - sum(l - 1);  Y: 2(a + g - 1) - sum(l - 1), the sum
    running over branches of singular points with l the contact order of the
    corresponding fiber.
    """
    a, b = data.bidegree
    deg = b if direction is X else a
    total = 2 * (deg + data.genus - 1) - sum(l - 1 for l in data.branch_l_values)
    if total < 0:
        raise CurveError(f"inconsistent branch data: count {total} is negative")
    return total
