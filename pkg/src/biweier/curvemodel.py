"""Validated implicit and parametrized curves, genus bookkeeping, singularity input."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .bipoly import BiDegree, BiPoly, Point, pullback
from .exactalg import BinaryForm, gcd_forms, squarefree_factorization
from .expr import parse_scalar


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class ImplicitCurve:
    """V(F) for a square-free bihomogeneous F.  Irreducibility is not checked."""

    F: BiPoly

    @property
    def bidegree(self) -> BiDegree:
        return self.F.bidegree

    def contains(self, p: Point) -> bool:
        return not self.F.evaluate(p)

    def is_singular(self, p: Point) -> bool:
        return all(not self.F.partial(v).evaluate(p) for v in ("x0", "x1", "y0", "y1"))


@dataclass(frozen=True)
class RationalCurve:
    """Phi = (phi0 : phi1 ; psi0 : psi1); deg phi = b, deg psi = a."""

    phi0: BinaryForm
    phi1: BinaryForm
    psi0: BinaryForm
    psi1: BinaryForm

    @property
    def a(self) -> int:
        return self.psi0.degree

    @property
    def b(self) -> int:
        return self.phi0.degree

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(self.a, self.b)

    def forms(self):
        return (self.phi0, self.phi1, self.psi0, self.psi1)

    def __call__(self, s, t) -> Point:
        return Point((self.phi0(s, t), self.phi1(s, t)), (self.psi0(s, t), self.psi1(s, t)))

    def __str__(self):
        return f"({self.phi0} : {self.phi1} ; {self.psi0} : {self.psi1})"


def _x_coefficient_forms(F: BiPoly):
    """F = sum_j c_j(x0,x1) y0^(b-j) y1^j; return the c_j as binary forms in x."""
    out = []
    for j in range(F.b + 1):
        coeffs = [Fraction(0)] * (F.a + 1)
        for (i0, i1, j0, j1), v in F.terms.items():
            if j1 == j:
                coeffs[i1] = v
        out.append(BinaryForm(F.a, tuple(coeffs)))
    return out


def _form_is_squarefree(f: BinaryForm) -> bool:
    return all(m == 1 for _, m in squarefree_factorization(f))


def is_squarefree(F: BiPoly) -> bool:
    """Exact square-freeness test for a nonzero bihomogeneous polynomial.

    Factors depending only on x divide every coefficient form c_j(x); they are
    checked through the gcd of those forms.  Any repeated factor involving y
    survives specialization x = (1:c) as a repeated factor of a binary form in
    y, and a square-free F fails the test for at most a(2b-1)+a values of c.
    """
    a, b = F.a, F.b
    content = reduce(gcd_forms, (c for c in _x_coefficient_forms(F) if not c.is_zero()))
    if content.degree and not _form_is_squarefree(content):
        return False
    if b == 0:
        return True
    tries = a * (2 * b - 1) + a + 2
    for c in range(tries):
        vals = []
        for j in range(b + 1):
            vals.append(sum((v * Fraction(c) ** i1 for (i0, i1, j0, j1), v in F.terms.items() if j1 == j), Fraction(0)))
        g = BinaryForm(b, tuple(vals))
        if g.is_zero():
            continue
        if _form_is_squarefree(g):
            return True
    return False


def make_implicit(F: BiPoly) -> ImplicitCurve:
    if F.is_zero():
        raise CurveError("the zero polynomial does not define a curve")
    if F.a < 0 or F.b < 0:
        raise CurveError("negative bidegree")
    if not is_squarefree(F):
        raise CurveError("non-reduced curve: F has a repeated factor")
    return ImplicitCurve(F)


def make_rational(phi0, phi1, psi0, psi1) -> RationalCurve:
    if phi0.degree != phi1.degree and not (phi0.is_zero() or phi1.is_zero()):
        raise CurveError(f"degree mismatch: deg phi0 = {phi0.degree}, deg phi1 = {phi1.degree}")
    if psi0.degree != psi1.degree and not (psi0.is_zero() or psi1.is_zero()):
        raise CurveError(f"degree mismatch: deg psi0 = {psi0.degree}, deg psi1 = {psi1.degree}")
    b = max(phi0.degree, phi1.degree)
    a = max(psi0.degree, psi1.degree)
    # a zero component carries degree 0; give it the partner's degree
    phi0, phi1 = (_pad(phi0, b), _pad(phi1, b))
    psi0, psi1 = (_pad(psi0, a), _pad(psi1, a))
    if phi0.is_zero() and phi1.is_zero():
        raise CurveError("x-map (0:0) is undefined")
    if psi0.is_zero() and psi1.is_zero():
        raise CurveError("y-map (0:0) is undefined")
    if gcd_forms(phi0, phi1).degree:
        raise CurveError(f"non-reduced x-map: common factor {gcd_forms(phi0, phi1)}")
    if gcd_forms(psi0, psi1).degree:
        raise CurveError(f"non-reduced y-map: common factor {gcd_forms(psi0, psi1)}")
    if a == 0 and b == 0:
        raise CurveError("constant parametrization")
    return RationalCurve(phi0, phi1, psi0, psi1)


def _pad(f: BinaryForm, d: int) -> BinaryForm:
    if f.is_zero():
        return BinaryForm(d, (0,) * (d + 1)) if d else f
    return f


def genus(bidegree, total_delta: int) -> int:
    a, b = bidegree
    g = (a - 1) * (b - 1) - total_delta
    if g < 0 or total_delta < 0:
        raise CurveError("inconsistent singularity data: total delta exceeds the arithmetic genus")
    return g


def total_delta_rational(C: RationalCurve) -> int:
    return (C.a - 1) * (C.b - 1)


def check_defines(C: RationalCurve, F: BiPoly) -> bool:
    """True when F vanishes identically along the parametrization."""
    if F.bidegree != C.bidegree:
        return False
    return pullback(F, C).is_zero()


# ---------------------------------------------------------------------------
# singularity data for implicit curves


@dataclass(frozen=True)
class BranchInput:
    m: int
    l: int
    tangent_fiber: str | None = None  # "x": the (1,0)-fiber x = const is tangent
    c: int | None = None

    def __post_init__(self):
        if self.m < 1 or self.l < 1:
            raise CurveError("branch multiplicities must be positive")
        if self.tangent_fiber not in (None, "x", "y"):
            raise CurveError(f"tangent_fiber must be 'x', 'y' or null, got {self.tangent_fiber!r}")
        if self.tangent_fiber is not None and self.l <= self.m:
            raise CurveError("a tangent fiber requires l > m")
        if self.tangent_fiber is None:
            if self.l == 2 * self.m and self.c is None:
                raise CurveError("c is required when no fiber is tangent and l = 2m")
            if self.osculating_contact <= self.m:
                raise CurveError("c must exceed m")

    @property
    def mu_x(self) -> int:
        """Contact order of the (1,0)-fiber with the branch."""
        return self.l if self.tangent_fiber == "x" else self.m

    @property
    def mu_y(self) -> int:
        return self.l if self.tangent_fiber == "y" else self.m

    @property
    def osculating_contact(self) -> int:
        if self.c is not None:
            return self.c
        return self.l


@dataclass(frozen=True)
class SingularPointInput:
    point: Point
    delta: int
    branches: tuple


@dataclass(frozen=True)
class SingularityInput:
    points: tuple = field(default_factory=tuple)

    @property
    def total_delta(self) -> int:
        return sum(p.delta for p in self.points)

    def branches(self):
        return [br for p in self.points for br in p.branches]

    @classmethod
    def from_json(cls, data) -> SingularityInput:
        if isinstance(data, str):
            data = json.loads(data)
        pts = []
        for rec in data.get("points", []):
            coords = [parse_scalar(str(c)) for c in rec["point"]]
            if len(coords) != 4:
                raise CurveError("point needs four coordinates [a0, a1, b0, b1]")
            delta = int(rec["delta"])
            if delta < 0:
                raise CurveError("delta must be non-negative")
            brs = tuple(
                BranchInput(
                    m=int(br["m"]),
                    l=int(br["l"]),
                    tangent_fiber=br.get("tangent_fiber"),
                    c=None if br.get("c") is None else int(br["c"]),
                )
                for br in rec.get("branches", [])
            )
            pts.append(SingularPointInput(Point.of(*coords), delta, brs))
        return cls(tuple(pts))

    def to_json(self) -> dict:
        def coord(c):
            return str(c)

        return {
            "points": [
                {
                    "point": [coord(c) for c in p.point.x + p.point.y],
                    "delta": p.delta,
                    "branches": [
                        {"m": br.m, "tangent_fiber": br.tangent_fiber, "l": br.l, "c": br.c} for br in p.branches
                    ],
                }
                for p in self.points
            ]
        }

    def validate_against(self, C: ImplicitCurve):
        for p in self.points:
            if not C.contains(p.point):
                raise CurveError(f"singular point {p.point} is not on the curve")
            if not C.is_singular(p.point):
                warnings.warn(f"point {p.point} listed as singular is a smooth point of the curve")
        genus(C.bidegree, self.total_delta)


def _nullspace(rows, ncols):
    """Basis of the right kernel of a rational matrix (row reduction)."""
    A = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fcol]
        basis.append(v)
    return basis


def implicit_equation(C: RationalCurve) -> BiPoly:
    """The bihomogeneous F of type (a,b) vanishing on the image, with primitive integer coefficients."""
    a, b = C.a, C.b
    keys = [(a - i, i, b - j, j) for i in range(a + 1) for j in range(b + 1)]
    cols = [pullback(BiPoly(a, b, {k: 1}), C) for k in keys]
    D = 2 * a * b
    rows = [[col.coeffs[k] if col.degree == D else Fraction(0) for col in cols] for k in range(D + 1)]
    kernel = _nullspace(rows, len(keys))
    if len(kernel) != 1:
        raise CurveError(
            f"parametrization does not determine a unique curve of type ({a},{b}); is it birational onto its image?"
        )
    v = kernel[0]
    den = reduce(math.lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(math.gcd, ints, 0)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return BiPoly(a, b, {k: Fraction(x // g) for k, x in zip(keys, ints) if x})
