"""The (1,1) linear system: curves through three points, osculating (1,1)-curves,
the local hyperosculation test and the W(1,1) count."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly, Point, det_over_ring
from .curvemodel import CurveError, ImplicitCurve
from .exactalg import as_rational, is_zero
from .fibers import X, Y, is_fiber_weierstrass, osculating_fiber

BASIS = ((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))  # x0y0, x0y1, x1y0, x1y1


@dataclass(frozen=True)
class OneOneCurve:
    """g00 x0y0 + g01 x0y1 + g10 x1y0 + g11 x1y1."""

    gamma: tuple

    def __post_init__(self):
        if len(self.gamma) != 4:
            raise ValueError("a (1,1)-curve has four coefficients")
        object.__setattr__(self, "gamma", tuple(Fraction(g) if isinstance(g, int) else g for g in self.gamma))
        if all(is_zero(g) for g in self.gamma):
            raise ValueError("all coefficients of a (1,1)-curve vanish")

    @classmethod
    def from_bipoly(cls, G: BiPoly) -> OneOneCurve:
        return cls(G.oneone_coeffs())

    def bipoly(self) -> BiPoly:
        return BiPoly.from_oneone(*self.gamma)

    def is_reducible(self) -> bool:
        g00, g01, g10, g11 = self.gamma
        return is_zero(g00 * g11 - g01 * g10)

    def normalized(self) -> tuple:
        """Coefficients scaled so the first nonzero one is 1."""
        lead = next(g for g in self.gamma if not is_zero(g))
        out = []
        for g in self.gamma:
            v = g / lead
            r = as_rational(v)
            out.append(r if r is not None else v)
        return tuple(out)

    def proportional_to(self, other) -> bool:
        g = other.gamma if isinstance(other, OneOneCurve) else tuple(other)
        return all(
            is_zero(self.gamma[i] * g[j] - self.gamma[j] * g[i]) for i in range(4) for j in range(i + 1, 4)
        )

    def __call__(self, p: Point):
        return self.bipoly().evaluate(p)

    def __str__(self):
        return str(self.bipoly())


def segre_row(p: Point):
    (a0, a1), (b0, b1) = p.x, p.y
    return [a0 * b0, a0 * b1, a1 * b0, a1 * b1]


def curve_through_three(p: Point, q: Point, r: Point) -> OneOneCurve:
    """The (1,1)-curve through three points, from the 4x4 Segre determinant."""
    if p.same_as(q) or p.same_as(r) or q.same_as(r):
        raise CurveError("points must be pairwise distinct")
    top = [BiPoly(1, 1, {k: 1}) for k in BASIS]
    G = det_over_ring([top, segre_row(p), segre_row(q), segre_row(r)])
    if not isinstance(G, BiPoly) or G.is_zero():
        raise CurveError("degenerate triple: the three points lie on a common fiber")
    return OneOneCurve.from_bipoly(G)


# ---------------------------------------------------------------------------
# osculating (1,1)-curves on implicit curves


def _require_smooth_point(C: ImplicitCurve, p: Point):
    if not C.contains(p):
        raise CurveError(f"point {p} is not on the curve")
    if C.is_singular(p):
        raise CurveError(
            f"{p} is a singular point: it is a Weierstrass point by convention, no osculating curve exists"
        )
    a, b = C.bidegree
    if a + b < 3:
        raise CurveError("osculating (1,1)-curves need a + b >= 3")


def has_tangent_fiber(C: ImplicitCurve, p: Point) -> bool:
    return is_fiber_weierstrass(C, p, X) or is_fiber_weierstrass(C, p, Y)


def fiber_product(p: Point) -> OneOneCurve:
    return OneOneCurve.from_bipoly(osculating_fiber(p, X) * osculating_fiber(p, Y))


def osculating_11(C: ImplicitCurve, p: Point) -> OneOneCurve:
    """The unique (1,1)-curve with contact at least 3 with C at the smooth point p.

    With a tangent fiber it is the product of the two fibers through p.
    Otherwise the closed form for the pattern of vanishing coordinates of p
    is applied directly, without moving p.
    """
    _require_smooth_point(C, p)
    if has_tangent_fiber(C, p):
        return fiber_product(p)
    F = C.F
    xs, ys = ("x0", "x1"), ("y0", "y1")
    Fx = [F.partial(v).evaluate(p) for v in xs]
    Fy = [F.partial(v).evaluate(p) for v in ys]
    Fxx = [F.d(v, v).evaluate(p) for v in xs]
    Fyy = [F.d(v, v).evaluate(p) for v in ys]
    Fxy = [[F.d(u, v).evaluate(p) for v in ys] for u in xs]

    def g(i, j):
        return Fxy[i][j] - Fxx[i] * Fy[j] / (2 * Fx[i]) - Fyy[j] * Fx[i] / (2 * Fy[j])

    zx = [i for i in (0, 1) if is_zero(p.x[i])]
    zy = [j for j in (0, 1) if is_zero(p.y[j])]
    gamma = [[None, None], [None, None]]
    if not zx and not zy:
        for i in (0, 1):
            for j in (0, 1):
                gamma[i][j] = g(i, j)
    elif zx and not zy:
        iz, inz = zx[0], 1 - zx[0]
        for j in (0, 1):
            gamma[iz][j] = g(iz, j)
            gamma[inz][j] = Fy[j]
    elif zy and not zx:
        jz, jnz = zy[0], 1 - zy[0]
        for i in (0, 1):
            gamma[i][jz] = g(i, jz)
            gamma[i][jnz] = Fx[i]
    else:
        iz, inz = zx[0], 1 - zx[0]
        jz, jnz = zy[0], 1 - zy[0]
        gamma[iz][jz] = g(iz, jz)
        gamma[iz][jnz] = Fx[iz]
        gamma[inz][jz] = Fy[jz]
        gamma[inz][jnz] = Fraction(0)
    return OneOneCurve((gamma[0][0], gamma[0][1], gamma[1][0], gamma[1][1]))


# -- moving p to (0:1;0:1)


def _complement(pair):
    """A rational vector completing pair to a basis."""
    return (Fraction(1), Fraction(0)) if not is_zero(pair[1]) else (Fraction(0), Fraction(1))


def _dir(F: BiPoly, names, d) -> BiPoly:
    return F.partial(names[0]) * d[0] + F.partial(names[1]) * d[1]


class _MovedJet:
    """Derivatives of F at p after the linear change sending (0:1;0:1) to p.

    x = x0' * dx + x1' * p.x and y = y0' * dy + y1' * p.y, so derivatives in
    x0', y0' at (0:1;0:1) are directional derivatives of F at p along dx, dy.
    """

    def __init__(self, F: BiPoly, p: Point):
        self.F, self.p = F, p
        self.dx = _complement(p.x)
        self.dy = _complement(p.y)
        self._cache = {}

    def __call__(self, i: int, j: int):
        key = (i, j)
        if key not in self._cache:
            G = self.F
            for _ in range(i):
                G = _dir(G, ("x0", "x1"), self.dx)
            for _ in range(j):
                G = _dir(G, ("y0", "y1"), self.dy)
            self._cache[key] = G.evaluate(self.p)
        return self._cache[key]


def _gamma00(f):
    fx, fy = f(1, 0), f(0, 1)
    return f(1, 1) - f(0, 2) * fx / (2 * fy) - f(2, 0) * fy / (2 * fx)


def osculating_11_moved(C: ImplicitCurve, p: Point) -> OneOneCurve:
    """Osculating (1,1)-curve computed by moving p to (0:1;0:1) and back."""
    _require_smooth_point(C, p)
    if has_tangent_fiber(C, p):
        return fiber_product(p)
    f = _MovedJet(C.F, p)
    g00, g01, g10 = _gamma00(f), f(1, 0), f(0, 1)
    # x0' = (a1 x0 - a0 x1)/det, x1' = (-d1 x0 + d0 x1)/det
    (d0, d1), (a0, a1) = f.dx, p.x
    (e0, e1), (b0, b1) = f.dy, p.y
    detx = d0 * a1 - d1 * a0
    dety = e0 * b1 - e1 * b0
    x0p = (a1 / detx, -a0 / detx)
    x1p = (-d1 / detx, d0 / detx)
    y0p = (b1 / dety, -b0 / dety)
    y1p = (-e1 / dety, e0 / dety)
    gamma = [[Fraction(0)] * 2 for _ in range(2)]
    for coef, xv, yv in ((g00, x0p, y0p), (g01, x0p, y1p), (g10, x1p, y0p)):
        for i in (0, 1):
            for j in (0, 1):
                gamma[i][j] = gamma[i][j] + coef * xv[i] * yv[j]
    return OneOneCurve((gamma[0][0], gamma[0][1], gamma[1][0], gamma[1][1]))


class CriterionInapplicable(CurveError):
    pass


def local_criterion_terms(C: ImplicitCurve, p: Point):
    """The two expressions for k5; p is a (1,1)-Weierstrass point iff they agree."""
    _require_smooth_point(C, p)
    f = _MovedJet(C.F, p)
    fx, fy = f(1, 0), f(0, 1)
    if is_zero(fx) or is_zero(fy):
        raise CriterionInapplicable("criterion inapplicable at a point with a tangent fiber; use gap analysis")
    k1 = f(0, 2) / (2 * fy)
    k2 = f(2, 0) / (2 * fx)
    k3 = f(0, 3) / (6 * fy)
    k4 = f(3, 0) / (6 * fx)
    g00 = _gamma00(f)
    lhs = (f(2, 1) - 2 * k2 * g00 - 2 * k4 * fy) / (2 * fx)
    rhs = (f(1, 2) - 2 * k1 * g00 - 2 * k3 * fx) / (2 * fy)
    return lhs, rhs


def is_11_weierstrass_local(C: ImplicitCurve, p: Point) -> bool:
    lhs, rhs = local_criterion_terms(C, p)
    return is_zero(lhs - rhs)


def local_11_hessian(C: ImplicitCurve, chart=(1, 1)) -> BiPoly:
    """Local (1,1)-Hessian in the chart x_i = 1, y_j = 1.

    Built from partials in the chart's affine variables; within the chart it
    meets C exactly at the (1,1)-Weierstrass points without a tangent fiber.
    """
    i, j = chart
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError(f"bad chart {chart!r}")
    a, b = C.bidegree
    if a + b < 3:
        raise CurveError("local (1,1)-Hessian needs a + b >= 3")
    u, v = f"x{1 - i}", f"y{1 - j}"
    F = C.F
    Fu, Fv = F.d(u), F.d(v)
    Fuu, Fvv, Fuv = F.d(u, u), F.d(v, v), F.d(u, v)
    Fuuu, Fvvv = F.d(u, u, u), F.d(v, v, v)
    Fuuv, Fuvv = F.d(u, u, v), F.d(u, v, v)
    return (
        Fu ** 4 * (Fv * Fvvv * 2 - Fvv ** 2 * 3)
        - Fu ** 3 * Fv * (Fv * Fuvv - Fuv * Fvv) * 6
        + Fu * Fv ** 3 * (Fu * Fuuv - Fuu * Fuv) * 6
        - Fv ** 4 * (Fu * Fuuu * 2 - Fuu ** 2 * 3)
    )


# ---------------------------------------------------------------------------
# counting


@dataclass(frozen=True)
class BranchClass:
    """A branch in I (no tangent fiber, carries c) or J (tangent fiber, carries l)."""

    membership: str
    m: int
    l: int | None = None
    c: int | None = None
    tangent_fiber: str | None = None

    def __post_init__(self):
        if self.membership not in ("I", "J"):
            raise ValueError("membership is 'I' or 'J'")
        if self.membership == "J":
            if self.l is None or self.l <= self.m:
                raise ValueError("J-branch needs l > m")
        else:
            if self.c is None or self.c <= self.m:
                raise ValueError("I-branch needs c > m")

    def contribution(self) -> int:
        if self.membership == "I":
            return 3 * self.m + self.c - 6
        return 2 * self.m + 2 * self.l - 6


def count_11_weierstrass(bidegree, total_delta: int, branches) -> int:
    """12ab - 8a - 8b - 12 sum(delta) - sum_I(3m + c - 6) - sum_J(2m + 2l - 6).

    Branches are summed individually, so multibranched points are allowed.
    """
    a, b = bidegree
    total = 12 * a * b - 8 * a - 8 * b - 12 * total_delta - sum(br.contribution() for br in branches)
    if total < 0:
        raise CurveError(f"inconsistent data: W(1,1) = {total} is negative")
    return total


def _representable(value: int, seq) -> bool:
    """Is value = k*m + m_k with m = m_1 = ... = m_(k-1), for a sequence with known prefix seq?"""
    m = seq[0]
    k = 1
    while k * m < value:
        mk = value - k * m
        known_ok = all(seq[i] == m for i in range(1, min(k, len(seq))))
        if k >= len(seq) and any(x != m for x in seq):
            known_ok = False
        if known_ok and 1 <= mk <= m:
            if k < len(seq):
                if seq[k] == mk:
                    return True
            elif mk <= seq[-1]:
                return True
        k += 1
    return False


def validate_branch_bounds(branch: BranchClass, bidegree, multiplicity_sequence) -> bool:
    """Check l (J) or c (I) against the multiplicity sequence and the degree bound.

    The multiplicity sequence is a known prefix [m, m1, m2, ...]; later
    entries may be anything consistent with a non-increasing sequence.  For a
    tangent (1,0)-fiber ("x") the bound is b, for a (0,1)-fiber ("y") it is a.
    """
    seq = list(multiplicity_sequence)
    if not seq or seq[0] != branch.m or any(x < 1 for x in seq):
        return False
    if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
        return False
    a, b = bidegree
    if branch.membership == "J":
        bound = {"x": b, "y": a}.get(branch.tangent_fiber, max(a, b))
        value = branch.l
    else:
        bound = a + b
        value = branch.c
    return value <= bound and _representable(value, seq)
