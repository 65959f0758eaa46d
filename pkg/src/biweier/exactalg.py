"""Exact scalar arithmetic: univariate polynomials, binary forms, quotient fields.

Rationals are plain :class:`fractions.Fraction`.  Polynomial coefficients may be
any exact field elements (``Fraction`` or :class:`FieldElt`), so the same code
handles rational parameters and algebraic ones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

KRONECKER_MAX_DEGREE = 6


def _coerce(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_zero(x) -> bool:
    return not x


class Poly:
    """Dense univariate polynomial, coefficients stored low degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [_coerce(x) for x in coeffs]
        while c and is_zero(c[-1]):
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, x):
        return cls((x,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def __len__(self):
        return len(self.c)

    def __getitem__(self, k):
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({list(self.c)!r})"

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        n = max(len(self.c), len(other.c))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly(x * other for x in self.c)
        if not self.c or not other.c:
            return Poly()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if is_zero(a):
                continue
            for j, b in enumerate(other.c):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: Poly):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(rem) - len(other.c)
        if dq < 0:
            return Poly(), self
        inv = 1 / other.lc
        quo = [Fraction(0)] * (dq + 1)
        for k in range(dq, -1, -1):
            coef = rem[k + other.degree] * inv
            quo[k] = coef
            if is_zero(coef):
                continue
            for j, b in enumerate(other.c):
                rem[k + j] = rem[k + j] - coef * b
        return Poly(quo), Poly(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> Poly:
        return Poly(k * self.c[k] for k in range(1, len(self.c)))

    def monic(self) -> Poly:
        if not self.c:
            return self
        inv = 1 / self.lc
        return Poly(x * inv for x in self.c)

    def taylor(self, x0) -> Poly:
        """Coefficients of p(x0 + e) as a polynomial in e."""
        a = list(self.c)
        n = len(a)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] = a[j] + x0 * a[j + 1]
        return Poly(a)

    def order(self) -> int:
        """Index of the lowest nonzero coefficient."""
        for k, a in enumerate(self.c):
            if not is_zero(a):
                return k
        raise ValueError("order of the zero polynomial")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return (g, x, y) with a*x + b*y = g, g monic."""
    r0, r1 = a, b
    s0, s1 = Poly.const(1), Poly()
    t0, t1 = Poly(), Poly.const(1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = 1 / r0.lc
    return r0 * inv, s0 * inv, t0 * inv


def _yun(p: Poly):
    """Square-free decomposition of a nonconstant poly over a char-0 field."""
    out = []
    dp = p.derivative()
    b = poly_gcd(p, dp)
    c = p // b
    d = dp // b - c.derivative()
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c // a
        d = d // a - c.derivative()
        i += 1
    return out


# ---------------------------------------------------------------------------
# quotient fields Q[u]/(m)


class FieldElt:
    """Element of Q[u]/(modulus) for an irreducible monic modulus."""

    __slots__ = ("modulus", "value")

    def __init__(self, modulus: Poly, value: Poly):
        if modulus.degree < 2:
            raise ValueError("use Fraction for degree-1 moduli")
        self.modulus = modulus
        self.value = value % modulus if value.degree >= modulus.degree else value

    def _lift(self, other):
        if isinstance(other, FieldElt):
            if other.modulus != self.modulus:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def _new(self, value):
        return FieldElt(self.modulus, value)

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._new(self.value - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._new(o - self.value)

    def __neg__(self):
        return self._new(-self.value)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._new((self.value * o) % self.modulus)

    __rmul__ = __mul__

    def inverse(self) -> FieldElt:
        if not self.value:
            raise ZeroDivisionError("inversion of zero")
        g, x, _ = poly_xgcd(self.value, self.modulus)
        if g.degree != 0:
            raise ArithmeticError("modulus is not irreducible")
        return self._new(x % self.modulus)

    def __truediv__(self, other):
        if isinstance(other, FieldElt):
            return self * other.inverse()
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._new(self.value * (1 / Fraction(other)))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self._new(Poly.const(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.value == o

    def __hash__(self):
        if self.value.degree <= 0:
            return hash(self.value[0])
        return hash((self.modulus.c, self.value.c))

    def is_rational(self) -> bool:
        return self.value.degree <= 0

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.value[0]

    def __repr__(self):
        return f"FieldElt({format_poly(self.value, 'u')} mod {format_poly(self.modulus, 'u')})"

    def __str__(self):
        surd = quadratic_surd(self)
        if surd is not None:
            return format_surd(*surd)
        return format_poly(self.value, "u")


def field_generator(modulus: Poly):
    """The class of u in Q[u]/(modulus); a plain rational for linear moduli."""
    modulus = modulus.monic()
    if modulus.degree == 1:
        return -modulus[0]
    return FieldElt(modulus, Poly.x())


def as_rational(x):
    """Return x as Fraction if it is rational, else None."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, FieldElt) and x.is_rational():
        return x.rational()
    return None


def minimal_polynomial(x) -> Poly:
    """Monic minimal polynomial over Q of a Fraction or FieldElt."""
    r = as_rational(x)
    if r is not None:
        return Poly((-r, 1))
    n = x.modulus.degree
    # reduced basis: list of (pivot index, vector, combination of powers)
    reduced = []
    power = FieldElt(x.modulus, Poly.const(1))
    for k in range(n + 1):
        vec = [power.value[i] for i in range(n)]
        comb = [Fraction(0)] * (k + 1)
        comb[k] = Fraction(1)
        for piv, rv, rc in reduced:
            f = vec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, rv)]
                comb = [a - f * (rc[i] if i < len(rc) else 0) for i, a in enumerate(comb)]
        piv = next((i for i, a in enumerate(vec) if a), None)
        if piv is None:
            return Poly(comb).monic()
        inv = 1 / vec[piv]
        reduced.append((piv, [a * inv for a in vec], [a * inv for a in comb]))
        power = power * x
    raise ArithmeticError("no dependency found; modulus is not of the stated degree")


def _squarefree_int(n: int):
    """Write n = k^2 * d with d square-free; return (k, d)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    k, d = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return k, sign * d * n


def quadratic_surd(x):
    """For x in a quadratic field return (p, q, D) with x = p + q*sqrt(D)."""
    if not isinstance(x, FieldElt) or x.modulus.degree != 2:
        return None
    c0, c1 = x.modulus[0], x.modulus[1]
    disc = c1 * c1 - 4 * c0
    num, den = disc.numerator * disc.denominator, disc.denominator
    k, d = _squarefree_int(num)
    # u = (-c1 + sqrt(disc)) / 2, sqrt(disc) = (k/den) sqrt(d)
    p0, p1 = x.value[0], x.value[1]
    p = p0 - p1 * c1 / 2
    q = p1 * Fraction(k, den) / 2
    return p, q, d


def format_surd(p: Fraction, q: Fraction, d: int) -> str:
    if q == 0 or d == 1:
        return str(p + (q if d == 1 else 0))
    root = f"sqrt({d})"
    qs = "" if q == 1 else ("-" if q == -1 else f"{q}*")
    if p == 0:
        return f"{qs}{root}"
    sign = "+" if q > 0 else "-"
    qa = abs(q)
    qs = "" if qa == 1 else f"{qa}*"
    return f"{p} {sign} {qs}{root}"


def format_scalar(x) -> str:
    if isinstance(x, FieldElt):
        return str(x)
    return str(Fraction(x))


def format_poly(p: Poly, var: str = "u") -> str:
    terms = []
    for k in range(p.degree, -1, -1):
        a = p[k]
        if is_zero(a):
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        terms.append((a, mono))
    return _join_terms(terms)


def _join_terms(terms) -> str:
    if not terms:
        return "0"
    out = []
    for idx, (a, mono) in enumerate(terms):
        r = as_rational(a)
        if r is not None:
            neg = r < 0
            mag = abs(r)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
        else:
            neg = False
            body = f"({format_scalar(a)})" + (f"*{mono}" if mono else "")
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# binary forms


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form in (s, t); coeffs[k] multiplies s^(degree-k) t^k."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(_coerce(x) for x in self.coeffs)
        if len(c) != self.degree + 1:
            raise ValueError(f"form of degree {self.degree} needs {self.degree + 1} coefficients")
        if all(is_zero(x) for x in c):
            object.__setattr__(self, "degree", 0)
            c = (Fraction(0),)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> BinaryForm:
        return cls(0, (0,))

    @classmethod
    def const(cls, x) -> BinaryForm:
        return cls(0, (x,))

    @classmethod
    def s(cls) -> BinaryForm:
        return cls(1, (1, 0))

    @classmethod
    def t(cls) -> BinaryForm:
        return cls(1, (0, 1))

    @classmethod
    def from_poly(cls, p: Poly, degree: int | None = None) -> BinaryForm:
        """Homogenize p(u) with u = t/s to the given degree."""
        if degree is None:
            degree = max(p.degree, 0)
        if p.degree > degree:
            raise ValueError("degree too small to homogenize")
        return cls(degree, tuple(p[k] for k in range(degree + 1)))

    def dehomogenize(self) -> Poly:
        """f(1, u)."""
        return Poly(self.coeffs)

    def is_zero(self) -> bool:
        return self.degree == 0 and is_zero(self.coeffs[0])

    def __bool__(self):
        return not self.is_zero()

    def s_order(self) -> int:
        """Power of s dividing the form."""
        for k in range(self.degree, -1, -1):
            if not is_zero(self.coeffs[k]):
                return self.degree - k
        raise ValueError("s-order of zero form")

    def t_order(self) -> int:
        for k, a in enumerate(self.coeffs):
            if not is_zero(a):
                return k
        raise ValueError("t-order of zero form")

    def __neg__(self):
        return BinaryForm(self.degree, tuple(-x for x in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            other = BinaryForm.const(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.degree != other.degree:
            raise ValueError(f"adding forms of degrees {self.degree} and {other.degree}")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            other = BinaryForm.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return BinaryForm(self.degree, tuple(x * other for x in self.coeffs))
        if self.is_zero() or other.is_zero():
            return BinaryForm.zero()
        p = self.dehomogenize() * other.dehomogenize()
        return BinaryForm.from_poly(p, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BinaryForm.const(1)
        for _ in range(n):
            out = out * self
        return out

    def exact_div(self, other: BinaryForm) -> BinaryForm:
        if other.is_zero():
            raise ZeroDivisionError("division by zero form")
        if self.is_zero():
            return self
        e = other.s_order()
        if self.s_order() < e:
            raise ArithmeticError("inexact form division")
        q, r = divmod(self.dehomogenize(), other.dehomogenize())
        if r:
            raise ArithmeticError("inexact form division")
        return BinaryForm.from_poly(q, self.degree - other.degree)

    def diff_s(self) -> BinaryForm:
        if self.degree == 0:
            return BinaryForm.zero()
        d = self.degree
        return BinaryForm(d - 1, tuple((d - k) * self.coeffs[k] for k in range(d)))

    def diff_t(self) -> BinaryForm:
        if self.degree == 0:
            return BinaryForm.zero()
        d = self.degree
        return BinaryForm(d - 1, tuple(k * self.coeffs[k] for k in range(1, d + 1)))

    def diff(self, ns: int, nt: int) -> BinaryForm:
        f = self
        for _ in range(ns):
            f = f.diff_s()
        for _ in range(nt):
            f = f.diff_t()
        return f

    def __call__(self, s, t):
        d = self.degree
        acc = Fraction(0)
        spow = [Fraction(1)]
        for _ in range(d):
            spow.append(spow[-1] * s)
        tp = Fraction(1)
        for k in range(d + 1):
            a = self.coeffs[k]
            if not is_zero(a):
                acc = acc + a * spow[d - k] * tp
            tp = tp * t
        return acc

    def is_rational(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.coeffs)

    def content_normalized(self):
        """Split a rational form as scalar * primitive integer form.

        The primitive part has coprime integer coefficients and a positive first
        nonzero coefficient (s-descending order).
        """
        if self.is_zero():
            raise ValueError("cannot normalize the zero form")
        den = reduce(math.lcm, (Fraction(x).denominator for x in self.coeffs), 1)
        ints = [int(x * den) for x in self.coeffs]
        g = reduce(math.gcd, ints, 0)
        lead = next(x for x in ints if x)
        if lead < 0:
            g = -g
        prim = BinaryForm(self.degree, tuple(Fraction(x // g) for x in ints))
        return Fraction(g, den), prim

    def normalized(self) -> BinaryForm:
        return self.content_normalized()[1]

    def __str__(self):
        d = self.degree
        terms = []
        for k, a in enumerate(self.coeffs):
            if is_zero(a):
                continue
            parts = []
            if d - k:
                parts.append("s" if d - k == 1 else f"s^{d - k}")
            if k:
                parts.append("t" if k == 1 else f"t^{k}")
            terms.append((a, "*".join(parts)))
        return _join_terms(terms)


# ---------------------------------------------------------------------------
# gcd and factorization of rational binary forms


def _split_s(f: BinaryForm):
    e = f.s_order()
    return e, f.dehomogenize()


def gcd_forms(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Greatest common divisor, primitive with positive leading coefficient."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of zero forms")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    ef, pf = _split_s(f)
    eg, pg = _split_s(g)
    e = min(ef, eg)
    h = poly_gcd(pf, pg)
    out = BinaryForm.from_poly(h, h.degree) * (BinaryForm.s() ** e)
    return out.normalized()


def _sort_key(item):
    f = item[0]
    return (f.degree, tuple((abs(c), -c) for c in reversed(f.coeffs)))


def squarefree_factorization(f: BinaryForm):
    """[(factor, multiplicity)] with square-free, pairwise coprime factors."""
    if f.is_zero():
        raise ValueError("square-free factorization of the zero form")
    e, p = _split_s(f)
    out = []
    if e:
        out.append((BinaryForm.s(), e))
    if p.degree > 0:
        for q, m in _yun(p):
            out.append((BinaryForm.from_poly(q, q.degree).normalized(), m))
    return sorted(out, key=_sort_key)


def _int_poly(p: Poly):
    """Primitive integer coefficient list (low first) with positive leading term."""
    den = reduce(math.lcm, (x.denominator for x in p.c), 1)
    ints = [int(x * den) for x in p.c]
    g = reduce(math.gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    return [x // g for x in ints]


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(ints):
    """Rational roots of an integer polynomial (low-first coefficients)."""
    roots = []
    if ints[0] == 0:
        roots.append(Fraction(0))
    a0 = next(x for x in ints if x)
    an = ints[-1]
    p = Poly(ints)
    for num in _divisors(a0):
        for den in _divisors(an):
            if math.gcd(num, den) != 1:
                continue
            for r in (Fraction(num, den), Fraction(-num, den)):
                if r not in roots and p(r) == 0:
                    roots.append(r)
    return roots


def _lagrange(xs, ys) -> Poly:
    out = Poly()
    for i, xi in enumerate(xs):
        term = Poly.const(ys[i])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly((Fraction(-xj, xi - xj), Fraction(1, xi - xj)))
        out = out + term
    return out


def _kronecker_split(ints):
    """Find a nontrivial factor of a primitive integer poly with no rational roots."""
    n = len(ints) - 1
    p = Poly(ints)
    candidates = [x for k in range(0, 40) for x in ((k, -k) if k else (0,))]
    values = [(x, int(p(x))) for x in candidates]
    values = [(x, v) for x, v in values if v != 0]
    values.sort(key=lambda xv: (len(_divisors(xv[1])), abs(xv[0])))
    for d in range(2, n // 2 + 1):
        pts = values[: d + 1]
        xs = [x for x, _ in pts]
        divs = [_divisors(v) for _, v in pts]
        for combo in itertools.product(*divs):
            for signs in itertools.product((1, -1), repeat=d):
                ys = (combo[0],) + tuple(s * c for s, c in zip(signs, combo[1:]))
                g = _lagrange(xs, ys)
                if g.degree != d or any(c.denominator != 1 for c in g.c):
                    continue
                if not p % g:
                    return g
    return None


def _irreducible_parts(p: Poly):
    """Irreducible factors (as Polys) of a square-free rational polynomial."""
    out = []
    ints = _int_poly(p)
    for r in _rational_roots(ints):
        lin = Poly((-r, 1))
        out.append(lin)
        p = p // lin
    pending = [p] if p.degree > 0 else []
    while pending:
        q = pending.pop()
        if q.degree <= 3 or q.degree > KRONECKER_MAX_DEGREE:
            out.append(q)
            continue
        g = _kronecker_split(_int_poly(q))
        if g is None:
            out.append(q)
        else:
            pending.append(g)
            pending.append(q // g)
    return out


def irreducible_factorization(f: BinaryForm):
    """[(irreducible factor, multiplicity)] over Q.

    Square-free parts of degree above KRONECKER_MAX_DEGREE are returned whole;
    see :func:`certified_irreducible`.
    """
    out = []
    for part, m in squarefree_factorization(f):
        if part == BinaryForm.s():
            out.append((part, m))
            continue
        for q in _irreducible_parts(part.dehomogenize()):
            out.append((BinaryForm.from_poly(q, q.degree).normalized(), m))
    return sorted(out, key=_sort_key)


def certified_irreducible(f: BinaryForm) -> bool:
    """True when the factorization routine can vouch for irreducibility of f."""
    return f.degree <= KRONECKER_MAX_DEGREE


def form_multiplicity(f: BinaryForm, factor: BinaryForm) -> int:
    """Largest k with factor^k dividing f (f nonzero)."""
    if f.is_zero():
        raise ValueError("multiplicity in the zero form")
    k = 0
    while True:
        try:
            f = f.exact_div(factor)
        except ArithmeticError:
            return k
        k += 1
