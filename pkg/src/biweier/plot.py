"""Hand-written SVG of a rational curve in one affine chart, with marked Weierstrass points."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .curvemodel import CurveError, RationalCurve
from .report import AnalysisReport, decode_point, real_images

SAMPLES = 1024
SIZE = 640
MARGIN = 40
MARKERS = {"1,0": "circle", "0,1": "square", "1,1": "triangle", "singular": "cross"}
COLORS = {"1,0": "#1f77b4", "0,1": "#2ca02c", "1,1": "#d62728", "singular": "#000000"}


def _float_form(f):
    cs = [float(c) for c in f.coeffs]
    d = f.degree

    def ev(s, t):
        return sum(c * s ** (d - k) * t ** k for k, c in enumerate(cs))

    return ev


def sample_curve(C: RationalCurve, chart=(1, 1), n: int = SAMPLES):
    """Polyline segments of the curve in the chart x_i = 1, y_j = 1.

    Half the samples run over (1:u), half over (v:1), u and v in [-1, 1];
    segments break where the chart's denominators change sign.
    """
    i, j = chart
    fx = [_float_form(f) for f in (C.phi0, C.phi1)]
    fy = [_float_form(f) for f in (C.psi0, C.psi1)]
    half = n // 2
    params = [(1.0, -1.0 + 2.0 * k / (half - 1)) for k in range(half)]
    params += [(1.0 - 2.0 * k / (half - 1), 1.0) for k in range(half)]
    segments, cur, prev = [], [], None
    for s, t in params:
        dx, dy = fx[i](s, t), fy[j](s, t)
        sign = (dx > 0, dy > 0)
        if prev is not None and sign != prev:
            if len(cur) > 1:
                segments.append(cur)
            cur = []
        prev = sign
        if abs(dx) < 1e-12 or abs(dy) < 1e-12:
            continue
        cur.append((fx[1 - i](s, t) / dx, fy[1 - j](s, t) / dy))
    if len(cur) > 1:
        segments.append(cur)
    return segments


def _marks(rep: AnalysisReport, chart):
    i, j = chart
    marks, legend = [], []
    for row in rep.points:
        P = decode_point(row["point"])
        kinds = ["singular"] if row["singular"] else [k for k, w in row["weights"].items() if w]
        label = f"{row['point']['text']}: " + ", ".join(f"w({k})={w}" for k, w in row["weights"].items())
        if row["singular"]:
            label += f", delta={row['delta']}"
        imgs = real_images(P)
        shown = False
        for x0, x1, y0, y1 in imgs:
            xs, ys = (x0, x1), (y0, y1)
            if abs(xs[i]) < 1e-15 or abs(ys[j]) < 1e-15:
                continue
            shown = True
            for kind in kinds:
                marks.append((kind, xs[1 - i] / xs[i], ys[1 - j] / ys[j]))
        if not shown:
            label += " (not plotted: non-real or outside the chart)"
        legend.append((kinds[0] if kinds else "1,1", label))
    return marks, legend


def _bounds(points):
    xs = sorted(p[0] for p in points)
    ys = sorted(p[1] for p in points)

    def rng(v):
        if not v:
            return (-1.0, 1.0)
        lo, hi = v[int(0.05 * (len(v) - 1))], v[int(0.95 * (len(v) - 1))]
        if hi - lo < 1e-9:
            lo, hi = lo - 1, hi + 1
        pad = 0.15 * (hi - lo)
        return (lo - pad, hi + pad)

    return rng(xs), rng(ys)


def _marker(kind, x, y, r=6):
    color = COLORS[kind]
    shape = MARKERS[kind]
    if shape == "circle":
        return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="none" stroke="{color}" stroke-width="2"/>'
    if shape == "square":
        return f'<rect x="{x - r:.2f}" y="{y - r:.2f}" width="{2 * r}" height="{2 * r}" fill="none" stroke="{color}" stroke-width="2"/>'
    if shape == "triangle":
        pts = f"{x:.2f},{y - r:.2f} {x - r:.2f},{y + r:.2f} {x + r:.2f},{y + r:.2f}"
        return f'<polygon points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>'
    return (
        f'<path d="M{x - r:.2f},{y - r:.2f} L{x + r:.2f},{y + r:.2f} M{x - r:.2f},{y + r:.2f} L{x + r:.2f},{y - r:.2f}"'
        f' stroke="{color}" stroke-width="2"/>'
    )


def render_svg(C: RationalCurve, rep: AnalysisReport, chart=(1, 1)) -> str:
    if tuple(chart) not in ((0, 0), (0, 1), (1, 0), (1, 1)):
        raise CurveError(f"bad chart {chart}; use i,j with i, j in {{0, 1}}")
    chart = tuple(chart)
    segments = sample_curve(C, chart)
    marks, legend = _marks(rep, chart)
    (x_lo, x_hi), (y_lo, y_hi) = _bounds([p for seg in segments for p in seg] + [(m[1], m[2]) for m in marks])
    w = SIZE - 2 * MARGIN

    def sx(x):
        return MARGIN + (x - x_lo) / (x_hi - x_lo) * w

    def sy(y):
        return MARGIN + (y_hi - y) / (y_hi - y_lo) * w

    height = SIZE + 20 * (len(legend) + 1)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{height}" viewBox="0 0 {SIZE} {height}">',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}" fill="white" stroke="#999"/>',
        f'<clipPath id="view"><rect x="{MARGIN}" y="{MARGIN}" width="{w}" height="{w}"/></clipPath>',
    ]
    i, j = chart
    out.append(
        f'<text x="{MARGIN}" y="{MARGIN - 12}" font-size="13" font-family="sans-serif">'
        f"chart x{i}=1, y{j}=1: horizontal x{1 - i}/x{i}, vertical y{1 - j}/y{j}</text>"
    )
    if x_lo < 0 < x_hi:
        out.append(f'<line x1="{sx(0):.2f}" y1="{MARGIN}" x2="{sx(0):.2f}" y2="{MARGIN + w}" stroke="#ddd"/>')
    if y_lo < 0 < y_hi:
        out.append(f'<line x1="{MARGIN}" y1="{sy(0):.2f}" x2="{MARGIN + w}" y2="{sy(0):.2f}" stroke="#ddd"/>')
    for seg in segments:
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in seg if math.isfinite(x) and math.isfinite(y))
        out.append(f'<polyline points="{pts}" fill="none" stroke="#444" stroke-width="1.5" clip-path="url(#view)"/>')
    for kind, x, y in marks:
        out.append(_marker(kind, sx(x), sy(y)))
    ly = SIZE + 5
    for kind, label in legend:
        out.append(_marker(kind, MARGIN + 6, ly - 4, r=5))
        out.append(f'<text x="{MARGIN + 20}" y="{ly}" font-size="12" font-family="sans-serif">{escape(label)}</text>')
        ly += 20
    out.append("</svg>")
    return "\n".join(out)
