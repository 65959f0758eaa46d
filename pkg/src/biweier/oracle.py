"""Brute-force intersection multiplicities, independent of the closed forms.

Rational curves: order of the pulled-back polynomial at the parameter.
Implicit curves at smooth points: the curve is solved locally as a power
series by Newton iteration and the test polynomial is expanded along it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .bipoly import BiPoly, Point, pullback
from .curvemodel import CurveError, ImplicitCurve, RationalCurve, implicit_equation
from .exactalg import form_multiplicity, is_zero
from .fibers import mixed_hessian
from .wronskian import ParameterLocus, loci_of, point_table


class AtLeast(int):
    """A lower bound reached because the series was truncated."""

    def __repr__(self):
        return f"AtLeast({int(self)})"

    def __str__(self):
        return f">={int(self)}"


def mult_rational(C: RationalCurve, G: BiPoly, locus: ParameterLocus) -> int:
    """Intersection multiplicity of V(G) with the branch of C at one root of the locus.

    G and the locus root must live in the same field.
    """
    pb = pullback(G, C)
    if pb.is_zero():
        raise CurveError("non-proper intersection: G vanishes on the whole curve")
    return locus.order(pb)


# ---------------------------------------------------------------------------
# implicit curves


def _chart(p: Point):
    i = 0 if not is_zero(p.x[0]) else 1
    j = 0 if not is_zero(p.y[0]) else 1
    return i, j


def _shifted(G: BiPoly, p: Point, i: int, j: int):
    """G in the chart x_i = y_j = 1, as {(e_xi, e_eta): coeff} around p."""
    X0 = p.x[1 - i] / p.x[i]
    Y0 = p.y[1 - j] / p.y[j]
    out = {}
    for key, v in G.terms.items():
        ex, ey = key[1 - i], key[2 + (1 - j)]
        for k in range(ex + 1):
            cx = comb(ex, k) * X0 ** (ex - k)
            if is_zero(cx):
                continue
            for m in range(ey + 1):
                cy = comb(ey, m) * Y0 ** (ey - m)
                if is_zero(cy):
                    continue
                out[(k, m)] = out.get((k, m), Fraction(0)) + v * cx * cy
    return {k: v for k, v in out.items() if not is_zero(v)}


def _mul_trunc(p: list, q: list, n: int) -> list:
    """Product of two coefficient lists, truncated to length n."""
    out = [Fraction(0)] * min(n, len(p) + len(q) - 1) if p and q else []
    for i, x in enumerate(p[:n]):
        if is_zero(x):
            continue
        for j, y in enumerate(q[: n - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _compose(f: dict, eta: list, n: int, swap: bool) -> list:
    """f(xi, eta(xi)) mod xi^n as a coefficient list; with swap the two variables trade roles."""
    by_dep = {}
    for (ex, ey), v in f.items():
        indep, dep = (ey, ex) if swap else (ex, ey)
        if indep >= n:
            continue
        c = by_dep.setdefault(dep, [Fraction(0)] * n)
        c[indep] = c[indep] + v
    acc = []
    for d in range(max(by_dep, default=-1), -1, -1):
        acc = _mul_trunc(acc, eta, n)
        add = by_dep.get(d)
        if add:
            acc = acc + [Fraction(0)] * (n - len(acc))
            acc = [x + y for x, y in zip(acc, add)]
    return acc


def _d_dep(f: dict, swap: bool) -> dict:
    """Partial derivative of the local equation with respect to the dependent variable."""
    out = {}
    for (ex, ey), v in f.items():
        e = ex if swap else ey
        if e:
            key = (ex - 1, ey) if swap else (ex, ey - 1)
            out[key] = v * e
    return out


def _inverse(d: list, n: int) -> list:
    inv0 = 1 / d[0]
    out = [inv0]
    for k in range(1, n):
        acc = Fraction(0)
        for j in range(1, min(k, len(d) - 1) + 1):
            acc = acc + d[j] * out[k - j]
        out.append(-acc * inv0)
    return out


def _solve_branch(f: dict, n: int, swap: bool) -> list:
    """The dependent coordinate as a power series mod xi^n, by Newton iteration from 0."""
    df = _d_dep(f, swap)
    eta, prec = [], 1
    while prec < n:
        prec = min(2 * prec, n)
        r = _compose(f, eta, prec, swap)
        d = _compose(df, eta, prec, swap)
        step = _mul_trunc(r, _inverse(d, prec), prec)
        eta = eta + [Fraction(0)] * (prec - len(eta))
        eta = [x - y for x, y in zip(eta, step + [Fraction(0)] * (prec - len(step)))]
    if any(not is_zero(x) for x in _compose(f, eta, n, swap)):
        raise ArithmeticError("local series did not converge")
    return eta


def _order(c: list):
    return next((k for k, x in enumerate(c) if not is_zero(x)), None)


def mult_implicit_smooth(C: ImplicitCurve, G: BiPoly, p: Point, N: int | None = None, retry: bool = True):
    """Intersection multiplicity of V(G) and C at the smooth point p, or AtLeast(N).

    The dependent coordinate is y when F_y does not vanish at p, else x.
    """
    if not C.contains(p):
        raise CurveError(f"point {p} is not on the curve")
    if C.is_singular(p):
        raise CurveError(f"{p} is singular; series solving needs a smooth point")
    a, b = C.bidegree
    if N is None:
        N = 4 * (a + b)
    i, j = _chart(p)
    f = _shifted(C.F, p, i, j)
    g = _shifted(G, p, i, j)
    swap = is_zero(f.get((0, 1), 0))
    eta = _solve_branch(f, N, swap)
    o = _order(_compose(g, eta, N, swap))
    if o is not None:
        return o
    if retry:
        return mult_implicit_smooth(C, G, p, 2 * N, retry=False)
    return AtLeast(N)


# ---------------------------------------------------------------------------
# conjecture evidence


@dataclass(frozen=True)
class PointCheck:
    point: Point
    count: int
    observed: int
    predicted: int

    @property
    def ok(self) -> bool:
        return self.observed == self.predicted


@dataclass
class ConjectureReport:
    name: str
    total: int
    expected_total: int
    points: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.total == self.expected_total and all(pc.ok for pc in self.points)


def verify_mixed_hessian_attribution(C: RationalCurve, F: BiPoly | None = None) -> ConjectureReport:
    """Local mixed-Hessian intersections against 4 delta + w(1,0) + w(0,1), point by point.

    Every locus where the mixed Hessian meets C is included, so points
    predicted to contribute nothing are tested as well.
    """
    if F is None:
        F = implicit_equation(C)
    H = mixed_hessian(ImplicitCurve(F))
    pb = pullback(H, C)
    if pb.is_zero():
        raise CurveError("the mixed Hessian contains the curve")
    a, b = C.a, C.b
    table = point_table(C, F, extra_loci=[g for g, _ in loci_of(pb)])
    rep = ConjectureReport("mixed Hessian attribution", pb.degree, 4 * a * b - 2 * a - 2 * b)
    seen = 0
    for row in table:
        obs = sum(n * form_multiplicity(pb, g.factor) for g, n in row.branches.items())
        pred = 4 * row.delta + row.weights[(1, 0)] + row.weights[(0, 1)]
        seen += obs * row.count
        if obs or pred:
            rep.points.append(PointCheck(row.point, row.count, obs, pred))
    if seen != pb.degree:
        raise CurveError(f"mixed Hessian loci account for {seen} of {pb.degree} intersections")
    return rep


def verify_oneone_total(C: RationalCurve, F: BiPoly | None = None) -> ConjectureReport:
    """Local totals 12 delta + w(1,1) against the intersection number 12ab - 8a - 8b."""
    table = point_table(C, F)
    a, b = C.a, C.b
    rep = ConjectureReport("(1,1) total", 0, 12 * a * b - 8 * a - 8 * b)
    for row in table:
        val = 12 * row.delta + row.weights[(1, 1)]
        rep.total += val * row.count
        if val:
            rep.points.append(PointCheck(row.point, row.count, val, val))
    return rep
