"""Bihomogeneous polynomials on P1 x P1, points, pullbacks and determinants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exactalg import BinaryForm, FieldElt, Poly, _coerce, format_scalar, is_zero, _join_terms
from .expr import parse_polynomial

VARS = ("x0", "x1", "y0", "y1")


@dataclass(frozen=True)
class BiDegree:
    a: int
    b: int

    def __iter__(self):
        return iter((self.a, self.b))

    def __str__(self):
        return f"({self.a},{self.b})"


class BiPoly:
    """Polynomial in x0,x1,y0,y1, homogeneous of degree a in x and b in y.

    Terms map exponent tuples (i0, i1, j0, j1) to nonzero coefficients.  The
    zero polynomial keeps its nominal bidegree, which may be negative when it
    arises from differentiating past degree zero.
    """

    __slots__ = ("a", "b", "terms")

    def __init__(self, a: int, b: int, terms=None):
        self.a = a
        self.b = b
        clean = {}
        for k, v in (terms or {}).items():
            v = _coerce(v)
            if is_zero(v):
                continue
            if k[0] + k[1] != a or k[2] + k[3] != b:
                raise ValueError(f"monomial {_mono(k)} is not of bidegree ({a},{b})")
            clean[k] = v
        self.terms = clean

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(self.a, self.b)

    @classmethod
    def zero(cls, a=0, b=0):
        return cls(a, b)

    @classmethod
    def const(cls, c):
        return cls(0, 0, {(0, 0, 0, 0): c})

    @classmethod
    def var(cls, name: str):
        k = [0, 0, 0, 0]
        k[VARS.index(name)] = 1
        return cls(k[0] + k[1], k[2] + k[3], {tuple(k): 1})

    @classmethod
    def from_oneone(cls, g00, g01, g10, g11):
        return cls(1, 1, {(1, 0, 1, 0): g00, (1, 0, 0, 1): g01, (0, 1, 1, 0): g10, (0, 1, 0, 1): g11})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, i0, i1, j0, j1):
        return self.terms.get((i0, i1, j0, j1), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other) if other else BiPoly.zero(self.a, self.b)
        if not isinstance(other, BiPoly):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return (self.a, self.b) == (other.a, other.b) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return BiPoly(self.a, self.b, {k: -v for k, v in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other) if not is_zero(other) else BiPoly.zero(self.a, self.b)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if (self.a, self.b) != (other.a, other.b):
            raise ValueError(f"adding bidegrees ({self.a},{self.b}) and ({other.a},{other.b})")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(self.a, self.b, out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other) if not is_zero(other) else BiPoly.zero(self.a, self.b)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly(self.a, self.b, {k: v * other for k, v in self.terms.items()})
        a, b = self.a + other.a, self.b + other.b
        if not self.terms or not other.terms:
            return BiPoly(a, b)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                out[k] = out.get(k, 0) + v1 * v2
        return BiPoly(a, b, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def partial(self, var: str) -> BiPoly:
        idx = VARS.index(var)
        da = -1 if idx < 2 else 0
        db = -1 if idx >= 2 else 0
        out = {}
        for k, v in self.terms.items():
            e = k[idx]
            if e:
                nk = list(k)
                nk[idx] = e - 1
                out[tuple(nk)] = v * e
        return BiPoly(self.a + da, self.b + db, out)

    def d(self, *names: str) -> BiPoly:
        """Iterated partial derivative, e.g. F.d('x0', 'y0')."""
        out = self
        for n in names:
            out = out.partial(n)
        return out

    def __call__(self, x0, x1, y0, y1):
        acc = Fraction(0)
        px0, px1 = _powers(x0, self.a), _powers(x1, self.a)
        py0, py1 = _powers(y0, self.b), _powers(y1, self.b)
        for (i0, i1, j0, j1), v in self.terms.items():
            acc = acc + v * px0[i0] * px1[i1] * py0[j0] * py1[j1]
        return acc

    def evaluate(self, p: Point):
        return self(p.x[0], p.x[1], p.y[0], p.y[1])

    def substitute(self, x0, x1, y0, y1) -> BiPoly:
        """Substitute BiPolys (e.g. linear forms) for the four variables."""
        subs = (x0, x1, y0, y1)
        pw = [[BiPoly.const(1)] for _ in range(4)]
        for i, e in enumerate((self.a, self.a, self.b, self.b)):
            for _ in range(max(e, 0)):
                pw[i].append(pw[i][-1] * subs[i])
        acc = None
        for k, v in self.terms.items():
            term = pw[0][k[0]] * pw[1][k[1]] * pw[2][k[2]] * pw[3][k[3]] * v
            acc = term if acc is None else acc + term
        return acc if acc is not None else BiPoly.zero(self.a, self.b)

    def oneone_coeffs(self):
        """(g00, g01, g10, g11) of a (1,1)-form."""
        if (self.a, self.b) != (1, 1) and self.terms:
            raise ValueError("not a (1,1)-form")
        return (
            self.coeff(1, 0, 1, 0),
            self.coeff(1, 0, 0, 1),
            self.coeff(0, 1, 1, 0),
            self.coeff(0, 1, 0, 1),
        )

    def __repr__(self):
        return f"BiPoly(({self.a},{self.b}), {self})"

    def __str__(self):
        keys = sorted(self.terms, reverse=True)
        return _join_terms([(self.terms[k], _mono(k)) for k in keys])


def _mono(k) -> str:
    parts = []
    for name, e in zip(VARS, k):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _powers(x, n):
    out = [Fraction(1)]
    for _ in range(max(n, 0)):
        out.append(out[-1] * x)
    return out


@dataclass(frozen=True)
class Point:
    """A point (x0:x1; y0:y1) with coordinates in Q or a common quotient field."""

    x: tuple
    y: tuple

    def __post_init__(self):
        x = tuple(_coerce(c) for c in self.x)
        y = tuple(_coerce(c) for c in self.y)
        if len(x) != 2 or len(y) != 2:
            raise ValueError("point needs two coordinates per factor")
        if all(is_zero(c) for c in x) or all(is_zero(c) for c in y):
            raise ValueError("(0:0) is not a point of P1")
        mods = {c.modulus for c in x + y if isinstance(c, FieldElt)}
        if len(mods) > 1:
            raise ValueError("point coordinates over different fields")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def of(cls, a0, a1, b0, b1) -> Point:
        return cls((a0, a1), (b0, b1))

    @property
    def modulus(self):
        for c in self.x + self.y:
            if isinstance(c, FieldElt):
                return c.modulus
        return None

    def same_as(self, other: Point) -> bool:
        return is_zero(self.x[0] * other.x[1] - self.x[1] * other.x[0]) and is_zero(
            self.y[0] * other.y[1] - self.y[1] * other.y[0]
        )

    def affine(self):
        """Chart-normalized coordinates: divide each pair by its last nonzero entry."""
        def norm(pair):
            c0, c1 = pair
            if not is_zero(c1):
                return (c0 / c1, Fraction(1))
            return (Fraction(1), Fraction(0))

        return Point(norm(self.x), norm(self.y))

    def is_rational(self) -> bool:
        return self.modulus is None

    def __str__(self):
        p = self.affine()
        f = format_scalar
        return f"({f(p.x[0])}:{f(p.x[1])};{f(p.y[0])}:{f(p.y[1])})"


def parse_bipoly(text: str, declared: BiDegree | tuple) -> BiPoly:
    """Parse an expression in x0,x1,y0,y1 and check it has the declared bidegree."""
    a, b = declared
    terms = parse_polynomial(text, VARS)
    for k in terms:
        if k[0] + k[1] != a or k[2] + k[3] != b:
            raise ValueError(
                f"monomial {_mono(k) or '1'} has bidegree ({k[0] + k[1]},{k[2] + k[3]}), expected ({a},{b})"
            )
    return BiPoly(a, b, terms)


def parse_form(text: str, degree: int | None = None) -> BinaryForm:
    """Parse a binary form in s, t; the degree is inferred when not given."""
    terms = parse_polynomial(text, ("s", "t"))
    degs = {i + j for i, j in terms}
    if not terms:
        return BinaryForm.zero()
    if len(degs) > 1:
        raise ValueError(f"{text!r} is not homogeneous in s, t (degrees {sorted(degs)})")
    d = degs.pop()
    if degree is not None and d != degree:
        raise ValueError(f"{text!r} has degree {d}, expected {degree}")
    coeffs = [Fraction(0)] * (d + 1)
    for (i, j), v in terms.items():
        coeffs[j] = v
    return BinaryForm(d, tuple(coeffs))


# ---------------------------------------------------------------------------
# Euler identities


def _times(G: BiPoly, *names: str) -> BiPoly:
    """G multiplied by a monomial, by shifting exponents."""
    k = [0, 0, 0, 0]
    for n in names:
        k[VARS.index(n)] += 1
    terms = {(e[0] + k[0], e[1] + k[1], e[2] + k[2], e[3] + k[3]): v for e, v in G.terms.items()}
    return BiPoly(G.a + k[0] + k[1], G.b + k[2] + k[3], terms)


def _euler_sides(F: BiPoly, k: int):
    a, b = F.a, F.b
    d, m = F.d, _times
    table = {
        1: lambda: (m(d("x0"), "x0") + m(d("x1"), "x1"), a * F),
        2: lambda: (m(d("y0"), "y0") + m(d("y1"), "y1"), b * F),
        3: lambda: (m(d("x0", "x0"), "x0") + m(d("x0", "x1"), "x1"), (a - 1) * d("x0")),
        4: lambda: (m(d("x0", "x1"), "x0") + m(d("x1", "x1"), "x1"), (a - 1) * d("x1")),
        5: lambda: (
            m(d("x0", "x0"), "x0", "x0") + 2 * m(d("x0", "x1"), "x0", "x1") + m(d("x1", "x1"), "x1", "x1"),
            (a - 1) * a * F,
        ),
        6: lambda: (m(d("y0", "y0"), "y0") + m(d("y0", "y1"), "y1"), (b - 1) * d("y0")),
        7: lambda: (m(d("y0", "y1"), "y0") + m(d("y1", "y1"), "y1"), (b - 1) * d("y1")),
        8: lambda: (
            m(d("y0", "y0"), "y0", "y0") + 2 * m(d("y0", "y1"), "y0", "y1") + m(d("y1", "y1"), "y1", "y1"),
            (b - 1) * b * F,
        ),
        9: lambda: (m(d("x0", "y0"), "x0") + m(d("x1", "y0"), "x1"), a * d("y0")),
        10: lambda: (m(d("x0", "y1"), "x0") + m(d("x1", "y1"), "x1"), a * d("y1")),
        11: lambda: (m(d("x0", "y0"), "y0") + m(d("x0", "y1"), "y1"), b * d("x0")),
        12: lambda: (m(d("x1", "y0"), "y0") + m(d("x1", "y1"), "y1"), b * d("x1")),
        13: lambda: (
            m(d("x0", "y0"), "x0", "y0") + m(d("x1", "y0"), "x1", "y0")
            + m(d("x0", "y1"), "x0", "y1") + m(d("x1", "y1"), "x1", "y1"),
            a * b * F,
        ),
    }
    return table[k]()


EULER_IDS = tuple(range(1, 14))


def euler_defect(F: BiPoly, identity_id: int) -> BiPoly:
    """Left side minus right side of Euler identity number 1..13.

    1 and 2 are the first-order relations; 3..13 are the second-order ones.
    The result is identically zero for every bihomogeneous F.
    """
    if identity_id not in EULER_IDS:
        raise ValueError(f"unknown Euler identity {identity_id!r}; use 1..13")
    lhs, rhs = _euler_sides(F, identity_id)
    return lhs - rhs


def pullback(G: BiPoly, curve) -> BinaryForm:
    """Substitute a parametrization (phi0, phi1, psi0, psi1) into G."""
    forms = (curve.phi0, curve.phi1, curve.psi0, curve.psi1)
    if not G.terms:
        return BinaryForm.zero()
    pw = []
    for f, e in zip(forms, (G.a, G.a, G.b, G.b)):
        row = [BinaryForm.const(1)]
        for _ in range(e):
            row.append(row[-1] * f)
        pw.append(row)
    acc = BinaryForm.zero()
    for (i0, i1, j0, j1), v in G.terms.items():
        acc = acc + pw[0][i0] * pw[1][i1] * pw[2][j0] * pw[3][j1] * v
    return acc


# ---------------------------------------------------------------------------
# determinants


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, FieldElt))


def bareiss(M):
    """Fraction-free Gaussian elimination for matrices of field scalars."""
    n = len(M)
    if all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for row in M for x in row):
        return Fraction(_bareiss_int([[int(x) for x in row] for row in M]))
    A = [[_coerce(x) for x in row] for row in M]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if is_zero(A[k][k]):
            for i in range(k + 1, n):
                if not is_zero(A[i][k]):
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return A[n - 1][n - 1] * sign if n else Fraction(1)


def _bareiss_int(A) -> int:
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = A[k][k]
        for i in range(k + 1, n):
            rik = A[i][k]
            Ai, Ak = A[i], A[k]
            for j in range(k + 1, n):
                Ai[j] = (Ai[j] * piv - rik * Ak[j]) // prev
        prev = piv
    return A[n - 1][n - 1] * sign if n else 1


def det_by_minors(M):
    """Division-free expansion by minors along successive rows.

    Works over any commutative ring; memoizes minors on column subsets.
    """
    n = len(M)
    if n == 0:
        return Fraction(1)
    # minors of the last k rows, keyed by sorted column tuple
    minors = {(j,): M[n - 1][j] for j in range(n)}
    for k in range(2, n + 1):
        row = M[n - k]
        nxt = {}
        for cols in combinations(range(n), k):
            acc = None
            for pos, j in enumerate(cols):
                e = row[j]
                if _is_scalar(e) and is_zero(e):
                    continue
                sub = minors[cols[:pos] + cols[pos + 1:]]
                term = e * sub
                if pos % 2:
                    term = -term
                acc = term if acc is None else acc + term
            nxt[cols] = acc if acc is not None else Fraction(0)
        minors = nxt
    return minors[tuple(range(n))]


def cofactor_expansion(M, row: int = 0):
    """Laplace expansion along the given row; minors via det_over_ring."""
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = None
    for j in range(n):
        e = M[row][j]
        if _is_scalar(e) and is_zero(e):
            continue
        minor = [[M[i][c] for c in range(n) if c != j] for i in range(n) if i != row]
        term = e * det_over_ring(minor)
        if (row + j) % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc if acc is not None else Fraction(0)


def _form_row_degrees(M):
    degs = []
    for row in M:
        ds = {e.degree for e in row if isinstance(e, BinaryForm) and not e.is_zero()}
        if len(ds) > 1:
            return None
        degs.append(ds.pop() if ds else None)
    return degs


def _interpolate(xs, ys) -> Poly:
    """Newton interpolation, returned in monomial form."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = Poly.const(coef[-1])
    for i in range(n - 2, -1, -1):
        p = p * Poly((-xs[i], 1)) + coef[i]
    return p


def det_forms_interpolated(M) -> BinaryForm:
    """Determinant of a matrix of binary forms by evaluation at s=1 and interpolation."""
    M = [[e if isinstance(e, BinaryForm) else BinaryForm.const(e) for e in row] for row in M]
    degs = _form_row_degrees(M)
    if degs is None:
        T = [list(col) for col in zip(*M)]
        degs = _form_row_degrees(T)
        if degs is None:
            raise ValueError("matrix of forms is not row- or column-homogeneous")
        M = T
    if any(d is None for d in degs):
        return BinaryForm.zero()
    total = sum(degs)
    polys = [[e.dehomogenize() for e in row] for row in M]
    xs = [Fraction(k) for k in range(total + 1)]
    ys = [bareiss([[p(x) for p in row] for row in polys]) for x in xs]
    return BinaryForm.from_poly(_interpolate(xs, ys), total)


def det_over_ring(M):
    """Exact determinant of a square matrix of scalars, BinaryForms or BiPolys."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError(f"determinant of a non-square matrix ({n} rows)")
    if n == 0:
        return Fraction(1)
    if all(_is_scalar(e) for row in M for e in row):
        return bareiss(M)
    if n > 1 and all(_is_scalar(e) for row in M[1:] for e in row):
        return cofactor_expansion(M, 0)
    if n >= 4 and all(isinstance(e, BinaryForm) or _is_scalar(e) for row in M for e in row):
        return det_forms_interpolated(M)
    return det_by_minors(M)
