"""Deterministic SVG rendering of decorated polygons.

Output is a pure function of (polygon, viewport): fixed element order, fixed
coordinate formatting, no randomness, so snapshots can be compared bytewise.
"""

from __future__ import annotations

from fractions import Fraction

from .exactmath import DomainError
from .wedge import GeoPolygon

Viewport = tuple[Fraction, Fraction, Fraction, Fraction]  # xmin, ymin, xmax, ymax

_W, _H = 480, 480
_MARGIN = 20


def default_viewport(poly: GeoPolygon, pad: Fraction = Fraction(2)) -> Viewport:
    """Bounding box of vertices and cut termini, padded; rays get pad*3 of room."""
    xs = [v[0] for v in poly.vertices] + [c.terminus[0] for c in poly.cuts]
    ys = [v[1] for v in poly.vertices] + [c.terminus[1] for c in poly.cuts]
    if poly.rays is not None:
        r0, r1 = poly.rays
        xs += [poly.vertices[0][0] + 3 * pad * r0[0], poly.vertices[-1][0] + 3 * pad * r1[0]]
        ys += [poly.vertices[0][1] + 3 * pad * r0[1], poly.vertices[-1][1] + 3 * pad * r1[1]]
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _fmt(x) -> str:
    return f"{float(x):.4f}"


class _Mapper:
    def __init__(self, vp: Viewport):
        xmin, ymin, xmax, ymax = vp
        self.xmin, self.ymin, self.xmax, self.ymax = xmin, ymin, xmax, ymax
        span = max(xmax - xmin, ymax - ymin)
        self.scale = Fraction(_W - 2 * _MARGIN) / span

    def xy(self, p) -> tuple[str, str]:
        x = _MARGIN + (Fraction(p[0]) - self.xmin) * self.scale
        # SVG y grows downward
        y = _H - _MARGIN - (Fraction(p[1]) - self.ymin) * self.scale
        return _fmt(x), _fmt(y)

    def pt(self, p) -> str:
        x, y = self.xy(p)
        return f"{x},{y}"


def _clip_halfplane(pts, inside, intersect):
    out = []
    n = len(pts)
    for i in range(n):
        cur, nxt = pts[i], pts[(i + 1) % n]
        ci, ni = inside(cur), inside(nxt)
        if ci:
            out.append(cur)
            if not ni:
                out.append(intersect(cur, nxt))
        elif ni:
            out.append(intersect(cur, nxt))
    return out


def _clip_to_viewport(pts, vp: Viewport):
    """Sutherland-Hodgman clip of a polygon against the viewport rectangle."""
    xmin, ymin, xmax, ymax = vp

    def lerp(a, b, t):
        return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))

    planes = [
        (lambda p: p[0] >= xmin, lambda a, b: lerp(a, b, (xmin - a[0]) / (b[0] - a[0]))),
        (lambda p: p[0] <= xmax, lambda a, b: lerp(a, b, (xmax - a[0]) / (b[0] - a[0]))),
        (lambda p: p[1] >= ymin, lambda a, b: lerp(a, b, (ymin - a[1]) / (b[1] - a[1]))),
        (lambda p: p[1] <= ymax, lambda a, b: lerp(a, b, (ymax - a[1]) / (b[1] - a[1]))),
    ]
    for inside, intersect in planes:
        pts = _clip_halfplane(pts, inside, intersect)
        if not pts:
            return []
    return pts


def _finite_outline(poly: GeoPolygon, vp: Viewport):
    """Vertex cycle of the polygon; unbounded rays are extended past the viewport."""
    if poly.rays is None:
        return list(poly.vertices)
    xmin, ymin, xmax, ymax = vp
    # extending by T takes a primitive direction out of the box from anywhere in it
    T = (xmax - xmin) + (ymax - ymin) + max(abs(xmin), abs(xmax)) + max(abs(ymin), abs(ymax)) + 1
    r0, r1 = poly.rays
    v0, vl = poly.vertices[0], poly.vertices[-1]
    far0 = (v0[0] + T * r0[0], v0[1] + T * r0[1])
    far1 = (vl[0] + T * r1[0], vl[1] + T * r1[1])
    # cycle: far end of ray0, vertices, far end of ray1 (closed off outside the box)
    return [far0] + list(poly.vertices) + [far1]


def render_svg(poly: GeoPolygon, viewport: Viewport) -> str:
    """SVG document: filled region, dashed cuts, x-marks at termini, dotted extensions."""
    xmin, ymin, xmax, ymax = (Fraction(v) for v in viewport)
    if xmax <= xmin or ymax <= ymin:
        raise DomainError(f"empty viewport {viewport}")
    vp = (xmin, ymin, xmax, ymax)
    m = _Mapper(vp)

    region = _clip_to_viewport(_finite_outline(poly, vp), vp)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
    ]
    if region:
        pts = " ".join(m.pt(p) for p in region)
        parts.append(f'<polygon points="{pts}" fill="#dce9f7" stroke="#1f4e79" stroke-width="1.5"/>')
    span = (xmax - xmin) + (ymax - ymin)
    for c in poly.cuts:
        # dotted extension of the cut beyond the terminus
        ext = (c.terminus[0] + span * c.direction[0], c.terminus[1] + span * c.direction[1])
        (x1, y1), (x2, y2) = m.xy(c.terminus), m.xy(ext)
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="#888888" stroke-width="1" stroke-dasharray="1,3"/>'
        )
    for c in poly.cuts:
        (x1, y1), (x2, y2) = m.xy(c.base), m.xy(c.terminus)
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="#b22222" stroke-width="1.5" stroke-dasharray="5,3"/>'
        )
    for c in poly.cuts:
        cx, cy = (float(v) for v in m.xy(c.terminus))
        parts.append(
            f'<path d="M {cx - 4:.4f} {cy - 4:.4f} L {cx + 4:.4f} {cy + 4:.4f} '
            f'M {cx - 4:.4f} {cy + 4:.4f} L {cx + 4:.4f} {cy - 4:.4f}" '
            f'stroke="#b22222" stroke-width="1.5"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
