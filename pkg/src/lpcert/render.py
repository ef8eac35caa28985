"""SVG pictures of two-variable LPs, optionally with a concrete perturbation.

Vertices and the optimal point are computed exactly (a rational epsilon
keeps the perturbed data rational); floats appear only when mapping to
screen coordinates.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .certify import Optimal, solve
from .errors import NotTwoDimensional
from .model import MixedLP
from .vertex import enumerate_vertices

SIZE = 480
MARGIN = 30
BASE_SHADE = 0.04  # shading width (data units) of an unperturbed constraint
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def perturbed_instance(lp: MixedLP, epsilon: Fraction | None, order: Sequence[int] | None = None) -> MixedLP:
    """``lp`` with ``b_k`` replaced by ``b_k - epsilon**order[k]``."""
    if epsilon is None:
        return lp
    order = tuple(range(1, lp.m_I + 1)) if order is None else tuple(order)
    return lp.with_rhs(b_I=[b - Fraction(epsilon) ** k for b, k in zip(lp.b_I, order)])


def _window(lp: MixedLP) -> tuple[float, float, float, float]:
    pts = []
    rows = list(zip(lp.A, lp.b))
    for (a1, b1), (a2, b2) in combinations(rows, 2):
        det = a1[0] * a2[1] - a1[1] * a2[0]
        if det:
            pts.append(((b1 * a2[1] - b2 * a1[1]) / det, (a1[0] * b2 - a2[0] * b1) / det))
    if not pts:
        pts = [(Fraction(0), Fraction(0))]
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1.0)
    pad = 0.6 * span + 1.0
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    half = span / 2 + pad
    return cx - half, cx + half, cy - half, cy + half


def _clip_halfplane(poly, a, b):
    """Sutherland-Hodgman step keeping ``a . x >= b``."""
    out = []
    for k, cur in enumerate(poly):
        prev = poly[k - 1]
        fc = a[0] * cur[0] + a[1] * cur[1] - b
        fp = a[0] * prev[0] + a[1] * prev[1] - b
        if fc >= 0:
            if fp < 0:
                t = fp / (fp - fc)
                out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
            out.append(cur)
        elif fp >= 0:
            t = fp / (fp - fc)
            out.append((prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1])))
    return out


def _line_segment(a, b, win):
    """Endpoints of ``a . x = b`` inside the window, or None."""
    x0, x1, y0, y1 = win
    box = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    strip = _clip_halfplane(_clip_halfplane(box, a, b - 1e-12), (-a[0], -a[1]), -b - 1e-12)
    if len(strip) < 2:
        return None
    # The degenerate strip collapses onto the line; take its extreme points.
    d = (-a[1], a[0])
    strip.sort(key=lambda p: p[0] * d[0] + p[1] * d[1])
    return strip[0], strip[-1]


def render_svg(lp: MixedLP, epsilon: Fraction | None = None, order: Sequence[int] | None = None) -> str:
    if lp.n != 2:
        raise NotTwoDimensional(f"cannot draw a {lp.n}-variable LP")
    inst = perturbed_instance(lp, epsilon, order)
    order = tuple(range(1, lp.m_I + 1)) if order is None else tuple(order)
    win = _window(lp)
    x0, x1, y0, y1 = win
    scale = (SIZE - 2 * MARGIN) / (x1 - x0)

    def to_px(p):
        return (MARGIN + (p[0] - x0) * scale, SIZE - MARGIN - (p[1] - y0) * scale)

    def path(points):
        return " ".join(f"{'M' if k == 0 else 'L'}{u:.2f},{v:.2f}"
                        for k, (u, v) in enumerate(map(to_px, points))) + " Z"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    region = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    float_rows = [((float(a[0]), float(a[1])), float(b)) for a, b in zip(inst.A, inst.b)]
    for a, b in float_rows:
        region = _clip_halfplane(region, a, b)
    if region:
        parts.append(f'<path class="feasible" d="{path(region)}" fill="#eef4fb" stroke="none"/>')

    for k, (a, b) in enumerate(float_rows):
        seg = _line_segment(a, b, win)
        if seg is None:
            continue
        norm = (a[0] ** 2 + a[1] ** 2) ** 0.5
        width = BASE_SHADE * (x1 - x0) / 4
        if epsilon is not None and k >= inst.m_E:
            width += float(Fraction(epsilon) ** order[k - inst.m_E]) / norm
        off = (-a[0] / norm * width, -a[1] / norm * width)
        p, q = seg
        shade = [p, q, (q[0] + off[0], q[1] + off[1]), (p[0] + off[0], p[1] + off[1])]
        color = COLORS[k % len(COLORS)]
        parts.append(f'<path class="shade" d="{path(shade)}" fill="{color}" fill-opacity="0.35" stroke="none"/>')
        (u1, v1), (u2, v2) = to_px(p), to_px(q)
        parts.append(f'<line class="constraint" data-index="{k + 1}" x1="{u1:.2f}" y1="{v1:.2f}" '
                     f'x2="{u2:.2f}" y2="{v2:.2f}" stroke="{color}" stroke-width="1.5"/>')
        lu, lv = (u1 + u2) / 2, (v1 + v2) / 2
        parts.append(f'<text x="{lu:.1f}" y="{lv:.1f}" font-size="12" fill="{color}">{k + 1}</text>')

    c = (float(lp.c[0]), float(lp.c[1]))
    cn = (c[0] ** 2 + c[1] ** 2) ** 0.5
    if cn:
        mid = ((x0 + x1) / 2, (y0 + y1) / 2)
        level0 = c[0] * mid[0] + c[1] * mid[1]
        spacing = (x1 - x0) / 6 * cn
        for t in range(-2, 3):
            seg = _line_segment(c, level0 + t * spacing, win)
            if seg is None:
                continue
            (u1, v1), (u2, v2) = map(to_px, seg)
            parts.append(f'<line class="contour" x1="{u1:.2f}" y1="{v1:.2f}" x2="{u2:.2f}" y2="{v2:.2f}" '
                         'stroke="#999" stroke-dasharray="4 4" stroke-width="1"/>')
            parts.append(f'<text x="{u2 - 14:.1f}" y="{v2 + 14:.1f}" font-size="12" fill="#666">&#966;</text>')
        tail = (x0 + 0.12 * (x1 - x0), y0 + 0.12 * (y1 - y0))
        head = (tail[0] - c[0] / cn * (x1 - x0) / 8, tail[1] - c[1] / cn * (x1 - x0) / 8)
        (tu, tv), (hu, hv) = to_px(tail), to_px(head)
        parts.append(f'<line class="descent" x1="{tu:.2f}" y1="{tv:.2f}" x2="{hu:.2f}" y2="{hv:.2f}" '
                     'stroke="black" stroke-width="1.5" marker-end="url(#arrow)"/>')
        parts.insert(1, '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" '
                        'orient="auto"><path d="M0,0 L6,3 L0,6 Z" fill="black"/></marker></defs>')

    vertices = enumerate_vertices(inst)
    outcome = solve(inst) if vertices else None
    best = outcome.x_star if isinstance(outcome, Optimal) else None
    for v in vertices:
        u, w = to_px((float(v[0]), float(v[1])))
        cls = "vertex optimal" if v == best else "vertex"
        fill = "black" if v == best else "white"
        parts.append(f'<circle class="{cls}" data-x="{v[0]}" data-y="{v[1]}" cx="{u:.2f}" cy="{w:.2f}" '
                     f'r="4" fill="{fill}" stroke="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
