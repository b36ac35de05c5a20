"""Deterministic SVG 1.1 rendering of Newton polygons.

Each finite side is its own ``<polyline>``; the unbounded rays are dashed
``<line>`` elements clipped to the panel's bounding box.  Coordinates are
printed with a fixed number of decimals so output is byte-stable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .polygons import NewtonPolygon, PolygonKind

UNIT = 40
MARGIN = 1  # polygon units of padding around the vertices
PANEL_GAP = 30
TITLE_H = 24


def _f(x: float) -> str:
    return f"{x:.3f}"


def rays(N: NewtonPolygon, pts) -> List[Tuple[Tuple[Fraction, Fraction], Tuple[int, int]]]:
    """Start point and direction of each unbounded ray of the boundary."""
    first, last = pts[0], pts[-1]
    if N.kind is PolygonKind.GLOBAL:
        return [(first, (-1, 0)), (last, (-1, 0))]
    if N.kind is PolygonKind.DIFFERENCE:
        return [(first, (0, 1)), (last, (0, 1))]
    return [(first, (-1, 0)), (last, (0, 1))]


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _panel(title: str, N: NewtonPolygon, x0: float) -> Tuple[List[str], float, float]:
    pts = N.vertices()
    us = [p[0] for p in pts]
    vs = [p[1] for p in pts]
    umin, umax = min(us) - MARGIN, max(us) + MARGIN
    vmin, vmax = min(vs) - MARGIN, max(vs) + MARGIN
    w = float(umax - umin) * UNIT
    h = float(vmax - vmin) * UNIT

    def xy(p):
        return x0 + float(p[0] - umin) * UNIT, TITLE_H + float(vmax - p[1]) * UNIT

    out = [f'<g class="panel" data-kind="{N.kind.value}">',
           f'<text x="{_f(x0)}" y="16" font-family="monospace" font-size="12">{_escape(title)}</text>',
           f'<rect x="{_f(x0)}" y="{_f(TITLE_H)}" width="{_f(w)}" height="{_f(h)}" '
           f'fill="none" stroke="#cccccc"/>']
    for a, b in zip(pts, pts[1:]):
        (xa, ya), (xb, yb) = xy(a), xy(b)
        out.append(f'<polyline class="side" points="{_f(xa)},{_f(ya)} {_f(xb)},{_f(yb)}" '
                   f'fill="none" stroke="#1f4e79" stroke-width="2"/>')
    for start, (du, dv) in rays(N, pts):
        if du < 0:
            end = (umin, start[1])
        else:
            end = (start[0], vmax)
        (xa, ya), (xb, yb) = xy(start), xy(end)
        out.append(f'<line class="ray" x1="{_f(xa)}" y1="{_f(ya)}" x2="{_f(xb)}" y2="{_f(yb)}" '
                   f'stroke="#1f4e79" stroke-dasharray="4 3"/>')
    for p in pts:
        x, y = xy(p)
        out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="2.5" fill="#1f4e79"/>')
    out.append("</g>")
    return out, w, h


def render_svg(panels: Sequence[Tuple[str, NewtonPolygon]]) -> str:
    """SVG document with one panel per ``(title, polygon)``, left to right."""
    body: List[str] = []
    x = 0.0
    height = 0.0
    for title, N in panels:
        lines, w, h = _panel(title, N, x)
        body.extend(lines)
        x += w + PANEL_GAP
        height = max(height, h)
    width = max(x - PANEL_GAP, 1.0)
    total_h = height + TITLE_H
    head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(width)}" '
            f'height="{_f(total_h)}" viewBox="0 0 {_f(width)} {_f(total_h)}">')
    return "\n".join([head] + body + ["</svg>"]) + "\n"


def write_svg(path: str, panels: Sequence[Tuple[str, NewtonPolygon]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(panels))
