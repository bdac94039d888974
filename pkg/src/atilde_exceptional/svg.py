"""SVG rendering of arc diagrams on the marked annulus.

Marked point x sits at angle 90 - 360 (x-1)/n degrees, so increasing x runs
clockwise on both boundaries.  An arc is drawn along its lift: the angle
follows x linearly from x_s to x_e, which makes the drawing wind as often
as the arc does.
"""

import math
from xml.sax.saxutils import escape

from .annulus import ArcDiagram, ClosedCurve, lift
from .quiver import Orientation

_SAMPLES = 48
_ARC_COLOR = "#1f4e79"
_HEART_COLOR = "#c0392b"


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _angle(eps: Orientation, x: float) -> float:
    return math.pi / 2 - 2 * math.pi * (x - 1) / eps.n


def _point(center: float, radius: float, theta: float) -> tuple[float, float]:
    return center + radius * math.cos(theta), center - radius * math.sin(theta)


def _bezier_path(points: list[tuple[float, float]]) -> str:
    """Smooth path through the points (Catmull-Rom converted to cubic curves)."""
    parts = [f"M {_fmt(points[0][0])} {_fmt(points[0][1])}"]
    for k in range(len(points) - 1):
        p0 = points[k - 1] if k > 0 else points[k]
        p1, p2 = points[k], points[k + 1]
        p3 = points[k + 2] if k + 2 < len(points) else p2
        c1 = (p1[0] + (p2[0] - p0[0]) / 6, p1[1] + (p2[1] - p0[1]) / 6)
        c2 = (p2[0] - (p3[0] - p1[0]) / 6, p2[1] - (p3[1] - p1[1]) / 6)
        parts.append(
            f"C {_fmt(c1[0])} {_fmt(c1[1])} {_fmt(c2[0])} {_fmt(c2[1])} {_fmt(p2[0])} {_fmt(p2[1])}"
        )
    return " ".join(parts)


def render_diagram(
    diagram: ArcDiagram,
    size: int = 480,
    highlight=frozenset(),
    curves: tuple[ClosedCurve, ...] = (),
) -> str:
    """SVG document for the diagram; arcs in highlight (e.g. the heart) drawn in red."""
    eps = diagram.orientation
    center = size / 2
    outer = size * 0.45
    inner = size * 0.18
    gap = outer - inner

    def radius_of(x: int) -> float:
        return outer if eps.is_outer(x) else inner

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{escape(' '.join(a.label for a in diagram.arcs))}</title>",
        f'<circle cx="{_fmt(center)}" cy="{_fmt(center)}" r="{_fmt(outer)}" fill="none" stroke="black"/>',
        f'<circle cx="{_fmt(center)}" cy="{_fmt(center)}" r="{_fmt(inner)}" fill="#eeeeee" stroke="black"/>',
    ]

    for arc in diagram.arcs:
        xs, xe = lift(arc)
        rs, re_ = radius_of(xs), radius_of(xe)
        bulge = 0.0
        if eps.is_outer(xs) and eps.is_outer(xe):
            bulge = -0.45 * gap
        elif not eps.is_outer(xs) and not eps.is_outer(xe):
            bulge = 0.45 * gap
        points = []
        for k in range(_SAMPLES + 1):
            t = k / _SAMPLES
            radius = rs + (re_ - rs) * t + bulge * math.sin(math.pi * t)
            points.append(_point(center, radius, _angle(eps, xs + (xe - xs) * t)))
        color = _HEART_COLOR if arc in highlight else _ARC_COLOR
        lines.append(
            f'<path d="{_bezier_path(points)}" fill="none" stroke="{color}" stroke-width="2">'
            f"<title>{escape(arc.label)}</title></path>"
        )

    for curve in curves:
        winding = max(curve.winding, 1)
        points = []
        steps = _SAMPLES * winding
        for k in range(steps + 1):
            phi = 2 * math.pi * winding * k / steps
            radius = inner + gap / 2 + 0.15 * gap * math.sin(phi / (2 * winding))
            points.append(_point(center, radius, math.pi / 2 - phi))
        lines.append(
            f'<path d="{_bezier_path(points)}" fill="none" stroke="#7d3c98" stroke-dasharray="4 3"/>'
        )

    for x in range(1, eps.n + 1):
        px, py = _point(center, radius_of(x), _angle(eps, x))
        lines.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" fill="black"/>')
        lx, ly = _point(center, radius_of(x) + (14 if eps.is_outer(x) else -14), _angle(eps, x))
        lines.append(
            f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="12" text-anchor="middle" '
            f'dominant-baseline="middle">{x}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
