"""biweier command line: analyze | osculate | hessian | check-conjectures | plot."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bipoly import Point, _mono, parse_bipoly, parse_form
from .curvemodel import CurveError, ImplicitCurve, SingularityInput, implicit_equation, make_implicit, make_rational
from .expr import parse_scalar
from .fibers import X, Y, hessian, mixed_hessian, osculating_fiber
from .oneone import OneOneCurve, local_11_hessian, osculating_11
from .oracle import mult_implicit_smooth, mult_rational, verify_mixed_hessian_attribution, verify_oneone_total
from .report import analyze_implicit, analyze_rational, bipoly_primitive, encode_point, encode_scalar, point_text
from .wronskian import ParameterLocus, omega, system_dimension

EXIT_OK, EXIT_INPUT, EXIT_CHECK = 0, 1, 2


class InputError(ValueError):
    pass


def _pair(text: str, what: str):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"{what} must look like 'a,b' with integers, got {text!r}") from None
    if a < 0 or b < 0:
        raise InputError(f"{what} must be non-negative, got {text!r}")
    return a, b


def parse_param(text: str):
    parts = [p.strip() for p in text.split(";")]
    if len(parts) != 4:
        raise InputError(f"--param needs four forms 'phi0; phi1; psi0; psi1', got {len(parts)}")
    return make_rational(*(parse_form(p) for p in parts))


def load_curve(args):
    if bool(args.param) == bool(args.implicit):
        raise InputError("give exactly one of --param or --implicit")
    if args.param:
        return parse_param(args.param)
    if not args.type:
        raise InputError("--implicit needs --type a,b")
    return make_implicit(parse_bipoly(args.implicit, _pair(args.type, "--type")))


def parse_at(text: str):
    """'s : t' for a parameter, 'a0:a1;b0:b1' for a point."""
    if ";" in text:
        halves = text.split(";")
        if len(halves) != 2:
            raise InputError(f"point must look like 'a0:a1;b0:b1', got {text!r}")
        coords = []
        for h in halves:
            c = h.split(":")
            if len(c) != 2:
                raise InputError(f"point must look like 'a0:a1;b0:b1', got {text!r}")
            coords += [parse_scalar(x) for x in c]
        return "point", Point.of(*coords)
    c = text.split(":")
    if len(c) != 2:
        raise InputError(f"parameter must look like 's : t', got {text!r}")
    return "param", tuple(parse_scalar(x) for x in c)


def _emit(obj, args):
    print(json.dumps(obj, indent=2))


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    C = load_curve(args)
    if isinstance(C, ImplicitCurve):
        if args.system:
            raise InputError("--system needs a parametrized curve (--param)")
        sing = None
        if args.singularities:
            sing = SingularityInput.from_json(Path(args.singularities).read_text())
        rep = analyze_implicit(C, sing)
    else:
        rep = analyze_rational(C, [_pair(s, "--system") for s in args.system or ()])
    print(rep.table() if args.table else rep.to_json())
    return EXIT_CHECK if rep.failed else EXIT_OK


def _coeffs(G):
    return {_mono(k) or "1": encode_scalar(v) for k, v in sorted(G.terms.items(), reverse=True)}


def cmd_osculate(args) -> int:
    C = load_curve(args)
    system = _pair(args.system, "--system")
    if system not in ((1, 0), (0, 1), (1, 1)):
        raise InputError("--system must be 1,0, 0,1 or 1,1")
    kind, at = parse_at(args.at)
    r = system_dimension(*system)
    if isinstance(C, ImplicitCurve):
        if kind != "point":
            raise InputError("implicit curves take a point 'a0:a1;b0:b1' for --at")
        p = at
        if not C.contains(p):
            raise CurveError(f"point {p} is not on the curve")
        if C.is_singular(p):
            raise CurveError(f"{p} is singular: a singular point is a Weierstrass point by convention")
        if system == (1, 1):
            G = osculating_11(C, p).bipoly()
        else:
            G = osculating_fiber(p, X if system == (1, 0) else Y)
        contact = mult_implicit_smooth(C, G, p)
    else:
        if kind != "param":
            raise InputError("parametrized curves take a parameter 's : t' for --at")
        s, t = at
        p = C(s, t)
        if ImplicitCurve(implicit_equation(C)).is_singular(p):
            raise CurveError(
                f"{point_text(p)} is singular: a singular point is a Weierstrass point by convention,"
                " no osculating curve exists"
            )
        G = omega(C, system)(s, t)
        contact = mult_rational(C, G, ParameterLocus.at(s, t))
    if system == (1, 1):
        gamma = OneOneCurve.from_bipoly(G).normalized()
        G = OneOneCurve(gamma).bipoly()
    else:
        lead = next(v for v in (G.terms[k] for k in sorted(G.terms, reverse=True)))
        G = G * (1 / lead)
    out = {
        "point": encode_point(p),
        "system": list(system),
        "curve": str(G),
        "coefficients": _coeffs(G),
        "contact": int(contact),
        "contact_exact": not str(contact).startswith(">="),
        "r": r,
        "weierstrass": int(contact) > r,
    }
    _emit(out, args)
    return EXIT_OK


def cmd_hessian(args) -> int:
    C = load_curve(args)
    if not isinstance(C, ImplicitCurve):
        C = ImplicitCurve(implicit_equation(C))
    which = args.which
    out = {"implicit": str(C.F)}
    if which in ("1,0", "all"):
        out["1,0"] = str(bipoly_primitive(hessian(C, X)))
    if which in ("0,1", "all"):
        out["0,1"] = str(bipoly_primitive(hessian(C, Y)))
    if which in ("mixed", "all"):
        out["mixed"] = str(bipoly_primitive(mixed_hessian(C)))
    if which in ("local11", "all"):
        chart = _pair(args.chart, "--chart")
        if chart[0] > 1 or chart[1] > 1:
            raise InputError("--chart takes i,j in {0,1}")
        out[f"local 1,1 (chart {chart[0]},{chart[1]})"] = str(bipoly_primitive(local_11_hessian(C, chart)))
    _emit(out, args)
    return EXIT_OK


def cmd_check_conjectures(args) -> int:
    C = load_curve(args)
    if isinstance(C, ImplicitCurve):
        raise InputError("check-conjectures needs a parametrized curve (--param)")
    out = {}
    status = EXIT_OK
    for rep in (verify_mixed_hessian_attribution(C), verify_oneone_total(C)):
        out[rep.name] = {
            "total": rep.total,
            "expected_total": rep.expected_total,
            "evidence": "consistent" if rep.ok else "counterexample",
            "points": [
                {"point": point_text(pc.point), "count": pc.count, "observed": pc.observed, "predicted": pc.predicted, "ok": pc.ok}
                for pc in rep.points
            ],
        }
        if rep.total != rep.expected_total:
            status = EXIT_CHECK
    _emit(out, args)
    return status


def cmd_plot(args) -> int:
    from .plot import render_svg

    C = load_curve(args)
    if isinstance(C, ImplicitCurve):
        raise InputError("plot needs a parametrized curve (--param)")
    chart = _pair(args.chart, "--chart")
    rep = analyze_rational(C)
    svg = render_svg(C, rep, chart)
    Path(args.out).write_text(svg)
    print(f"wrote {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors: exit 1, keeping 2 for failed checks."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"biweier: error: {self.prog}: {message}\n")


VALUE_FLAGS = ("--at", "--param", "--implicit")


def _glue_values(argv):
    """Let values of VALUE_FLAGS start with '-', as in --at -1:4;1:8."""
    out, it = [], iter(argv)
    for a in it:
        if a in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def build_parser() -> argparse.ArgumentParser:
    curve = _Parser(add_help=False)
    curve.add_argument("--param", help="'phi0; phi1; psi0; psi1' binary forms in s, t")
    curve.add_argument("--implicit", help="bihomogeneous polynomial in x0, x1, y0, y1")
    curve.add_argument("--type", help="bidegree a,b of the implicit polynomial")

    ap = _Parser(prog="biweier", description="Weierstrass points of curves in P1 x P1")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[curve], help="Weierstrass points, weights and counting checks")
    p.add_argument("--singularities", help="JSON file with singular points and branch data (implicit curves)")
    p.add_argument("--system", action="append", help="extra system alpha,beta for the general Wronskian")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true", default=True, help="JSON output (default)")
    mode.add_argument("--table", action="store_true", help="plain-text table")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("osculate", parents=[curve], help="osculating curve at a point or parameter")
    p.add_argument("--at", required=True, help="'s : t' (parametrized) or 'a0:a1;b0:b1' (implicit)")
    p.add_argument("--system", default="1,1")
    p.set_defaults(func=cmd_osculate)

    p = sub.add_parser("hessian", parents=[curve], help="Hessian curves")
    p.add_argument("--which", default="all", choices=["1,0", "0,1", "mixed", "local11", "all"])
    p.add_argument("--chart", default="1,1", help="chart i,j for the local (1,1)-Hessian")
    p.set_defaults(func=cmd_hessian)

    p = sub.add_parser("check-conjectures", parents=[curve], help="evidence for the conjectured local attributions")
    p.set_defaults(func=cmd_check_conjectures)

    p = sub.add_parser("plot", parents=[curve], help="SVG of a real affine chart")
    p.add_argument("--chart", default="1,1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = build_parser().parse_args(_glue_values(list(argv)))
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, OSError) as exc:  # CurveError and ExprSyntaxError are ValueErrors
        print(f"biweier: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
