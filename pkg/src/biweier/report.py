"""Analysis reports: orchestration, exact JSON encoding and a plain-text table."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import reduce

from .bipoly import BiPoly, Point
from .curvemodel import CurveError, ImplicitCurve, RationalCurve, SingularityInput, genus, implicit_equation
from .exactalg import (
    BinaryForm,
    FieldElt,
    Poly,
    as_rational,
    format_poly,
    format_scalar,
    irreducible_factorization,
    minimal_polynomial,
    quadratic_surd,
)
from .expr import parse_polynomial, parse_scalar
from .fibers import CountInput, X, Y, count_fiber_weierstrass, hessian, mixed_hessian
from .oneone import BranchClass, count_11_weierstrass, local_11_hessian
from .wronskian import (
    applicable_systems,
    expected_xi_degree,
    formula_checks,
    point_table,
    weierstrass_records,
    xi_general,
)

# ---------------------------------------------------------------------------
# exact scalars and points


def encode_scalar(x):
    """Rationals as "p/q" strings; algebraic numbers as a dict with exact and approximate parts."""
    r = as_rational(x)
    if r is not None:
        return str(r)
    out = {"min_poly": format_poly(minimal_polynomial(x), "z"), "value": None, "field": None, "approx": None}
    surd = quadratic_surd(x)
    if surd is not None:
        out["value"] = format_scalar(x)
        p, q, d = surd
        z = float(p) + float(q) * cmath.sqrt(d)
        out["approx"] = _approx(z)
    else:
        out["value"] = format_poly(x.value, "u")
        out["field"] = format_poly(x.modulus, "u")
    return out


def _approx(z: complex) -> str:
    if abs(z.imag) < 1e-300:
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def decode_scalar(obj):
    if isinstance(obj, str):
        return parse_scalar(obj)
    if obj.get("field"):
        modulus = Poly.const(0) + _parse_u(obj["field"])
        return FieldElt(modulus, _parse_u(obj["value"]))
    return parse_scalar(obj["value"])


def _parse_u(text: str) -> Poly:
    terms = parse_polynomial(text, ("u",))
    deg = max((k[0] for k in terms), default=0)
    return Poly([terms.get((k,), 0) for k in range(deg + 1)])


def _primitive_pair(pair):
    rs = [as_rational(c) for c in pair]
    den = reduce(math.lcm, (r.denominator for r in rs), 1)
    ints = [int(r * den) for r in rs]
    g = reduce(math.gcd, ints, 0)
    last = next(v for v in reversed(ints) if v)
    if last < 0:
        g = -g
    return [v // g for v in ints]


def point_text(P: Point) -> str:
    if P.is_rational():
        x, y = _primitive_pair(P.x), _primitive_pair(P.y)
        return f"({x[0]}:{x[1]};{y[0]}:{y[1]})"
    return str(P)


def encode_point(P: Point) -> dict:
    A = P.affine()
    if P.is_rational():
        x, y = _primitive_pair(P.x), _primitive_pair(P.y)
        coords = [str(c) for c in x + y]
    else:
        coords = [encode_scalar(c) for c in A.x + A.y]
    return {"text": point_text(P), "coords": coords}


def decode_point(obj) -> Point:
    return Point.of(*(decode_scalar(c) for c in obj["coords"]))


def real_images(P: Point):
    """Real affine representatives of the conjugates of P, as float quadruples; [] if none are real."""
    A = P.affine()
    coords = A.x + A.y
    if P.is_rational():
        return [tuple(float(c) for c in coords)]
    surds = [quadratic_surd(c) if isinstance(c, FieldElt) else (c, Fraction(0), 1) for c in coords]
    if any(s is None for s in surds):
        return []
    d = next((s[2] for s in surds if s[1]), 1)
    if d < 0:
        return []
    root = math.sqrt(d)
    return [tuple(float(p) + sign * float(q) * root for p, q, _ in surds) for sign in (1, -1)]


# ---------------------------------------------------------------------------
# forms


def _scalar_text(x) -> str:
    return format_scalar(x)


def factored_text(f: BinaryForm) -> str:
    scalar, prim = f.content_normalized()
    parts = []
    for g, m in irreducible_factorization(prim):
        base = str(g) if g.degree == 1 and len(str(g)) == 1 else f"({g})"
        parts.append(base if m == 1 else f"{base}^{m}")
    head = str(scalar)
    return "*".join([head] + parts) if parts else head


def bipoly_primitive(G: BiPoly) -> BiPoly:
    """Scale a rational BiPoly to coprime integer coefficients, first term positive."""
    if G.is_zero():
        return G
    keys = sorted(G.terms, reverse=True)
    vals = [Fraction(G.terms[k]) for k in keys]
    den = reduce(math.lcm, (v.denominator for v in vals), 1)
    ints = [int(v * den) for v in vals]
    g = reduce(math.gcd, ints, 0)
    if ints[0] < 0:
        g = -g
    return BiPoly(G.a, G.b, {k: Fraction(v // g) for k, v in zip(keys, ints)})


def system_key(sy) -> str:
    return f"{sy[0]},{sy[1]}"


# ---------------------------------------------------------------------------
# the report


@dataclass
class AnalysisReport:
    curve: dict
    systems: dict = field(default_factory=dict)
    points: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    hessians: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(not c["ok"] for c in self.checks)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> AnalysisReport:
        return cls(**json.loads(text))

    def table(self) -> str:
        return render_table(self)


def _hessian_block(F: BiPoly) -> dict:
    C = ImplicitCurve(F)
    a, b = C.bidegree
    out = {}
    if a >= 2 and b >= 2:
        out["1,0"] = str(bipoly_primitive(hessian(C, X)))
        out["0,1"] = str(bipoly_primitive(hessian(C, Y)))
        out["mixed"] = str(bipoly_primitive(mixed_hessian(C)))
    if a + b >= 3:
        out["local 1,1 (chart 1,1)"] = str(bipoly_primitive(local_11_hessian(C, (1, 1))))
    return out


def _check_dicts(checks):
    return [{"name": c.name, "computed": c.computed, "formula": c.formula, "ok": c.ok} for c in checks]


def analyze_rational(C: RationalCurve, extra_systems=()) -> AnalysisReport:
    F = implicit_equation(C)
    rep = AnalysisReport(
        curve={
            "kind": "rational",
            "parametrization": [str(f) for f in C.forms()],
            "bidegree": [C.a, C.b],
            "implicit": str(F),
            "genus": 0,
        }
    )
    systems = applicable_systems(C)
    for sy in list(systems) + [tuple(s) for s in extra_systems if tuple(s) not in systems]:
        w = xi_general(C, *sy)
        scalar, prim = w.content_normalized()
        entry = {
            "xi": str(w),
            "scalar": str(scalar),
            "normalized": str(prim),
            "factored": factored_text(w),
            "degree": w.degree,
            "expected_degree": expected_xi_degree(C, *sy),
            "records": [],
        }
        for r in weierstrass_records(C, sy):
            entry["records"].append(
                {"point": encode_point(r.point), "count": r.count, "weight": r.weight, "loci": [str(g) for g in r.loci]}
            )
        rep.systems[system_key(sy)] = entry
        if sy not in systems and w.degree != expected_xi_degree(C, *sy):
            rep.warnings.append(f"xi{sy} has degree {w.degree}, expected {expected_xi_degree(C, *sy)}")
    table = point_table(C, F)
    for row in table:
        rep.points.append(
            {
                "point": encode_point(row.point),
                "count": row.count,
                "singular": row.singular,
                "delta": row.delta,
                "weights": {system_key(sy): w for sy, w in row.weights.items()},
                "gap_weights": {system_key(sy): w for sy, w in row.gap_weights.items()},
                "branches": [
                    {
                        "locus": str(g),
                        "roots": n,
                        "mu_x": bd.mu_x,
                        "mu_y": bd.mu_y,
                        "m": bd.m,
                        "tangent_fiber": bd.tangent_fiber,
                        "l": bd.l,
                        "c": bd.c,
                        "class": bd.membership,
                    }
                    for g, n in row.branches.items()
                    for bd in [row.branch_data[g]]
                ],
            }
        )
    rep.checks = _check_dicts(formula_checks(C, table))
    rep.hessians = _hessian_block(F)
    return rep


def analyze_implicit(C: ImplicitCurve, sing: SingularityInput | None = None) -> AnalysisReport:
    a, b = C.bidegree
    rep = AnalysisReport(curve={"kind": "implicit", "implicit": str(C.F), "bidegree": [a, b], "genus": None})
    rep.hessians = _hessian_block(C.F)
    if sing is None:
        rep.warnings.append("singularity data required: counts skipped (pass --singularities FILE)")
        return rep
    sing.validate_against(C)
    g = genus((a, b), sing.total_delta)
    rep.curve["genus"] = g
    branches = sing.branches()
    counts = {}
    counts["1,0"] = count_fiber_weierstrass(CountInput((a, b), g, tuple(br.mu_x for br in branches)), X)
    counts["0,1"] = count_fiber_weierstrass(CountInput((a, b), g, tuple(br.mu_y for br in branches)), Y)
    if a + b >= 3:
        classes = []
        for br in branches:
            if br.tangent_fiber:
                classes.append(BranchClass("J", br.m, l=br.l, tangent_fiber=br.tangent_fiber))
            else:
                classes.append(BranchClass("I", br.m, c=br.osculating_contact))
        counts["1,1"] = count_11_weierstrass((a, b), sing.total_delta, classes)
    for key, n in counts.items():
        rep.systems[key] = {"count_smooth": n}
    rep.warnings.append(
        "counts of smooth Weierstrass points come from the formulas; points are not located on implicit curves"
    )
    if a + b >= 3:
        rep.warnings.append(
            "W(1,1) includes the weight of smooth points with a tangent fiber, which implicit input cannot locate"
        )
    if any(len(p.branches) > 1 for p in sing.points) and a + b >= 3:
        rep.warnings.append("multibranched points are summed branch by branch in the (1,1) count")
    return rep


# ---------------------------------------------------------------------------
# plain-text table


def render_table(rep: AnalysisReport) -> str:
    lines = []
    c = rep.curve
    lines.append(f"curve ({c['kind']}) of type ({c['bidegree'][0]},{c['bidegree'][1]})")
    if c.get("parametrization"):
        lines.append("  Phi = (" + " : ".join(c["parametrization"][:2]) + " ; " + " : ".join(c["parametrization"][2:]) + ")")
    lines.append(f"  F = {c['implicit']}")
    for key, entry in rep.systems.items():
        if "factored" in entry:
            lines.append(f"  xi({key}) = {entry['factored']}")
        else:
            lines.append(f"  W({key}) = {entry['count_smooth']} (formula)")
    if rep.points:
        keys = list(rep.points[0]["weights"])
        wd = max(len("point"), *(len(r["point"]["text"]) for r in rep.points))
        head = f"{'point':<{wd}} {'n':>2} {'delta':>5} " + " ".join(f"w({k})".rjust(7) for k in keys) + "  branches"
        lines.append("")
        lines.append(head)
        lines.append("-" * len(head))
        for row in rep.points:
            brs = ", ".join(
                f"m={b['m']}" + (f",l={b['l']}({b['tangent_fiber']})" if b["tangent_fiber"] else f",c={b['c']}")
                + (f" x{b['roots']}" if b["roots"] > 1 else "")
                for b in row["branches"]
            )
            tag = " sing" if row["singular"] else ""
            lines.append(
                f"{row['point']['text']:<{wd}} {row['count']:>2} {row['delta']:>5} "
                + " ".join(str(row["weights"][k]).rjust(7) for k in keys)
                + f"  {brs}{tag}"
            )
    if rep.checks:
        lines.append("")
        for chk in rep.checks:
            status = "ok" if chk["ok"] else "FAIL"
            lines.append(f"  [{status}] {chk['name']}: computed {chk['computed']}, formula {chk['formula']}")
    for w in rep.warnings:
        lines.append(f"  warning: {w}")
    return "\n".join(lines)


__all__ = [
    "AnalysisReport",
    "analyze_implicit",
    "analyze_rational",
    "decode_point",
    "decode_scalar",
    "encode_point",
    "encode_scalar",
    "point_text",
    "real_images",
    "render_table",
    "CurveError",
]
