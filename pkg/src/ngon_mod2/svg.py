"""SVG rendering of polygon surfaces and traces.

Pixel coordinates are floats with 12 significant digits; every element carries
its exact coordinates as a JSON ``data-exact`` attribute.
"""
from __future__ import annotations

import json
from xml.sax.saxutils import quoteattr

from .number_field import encode
from .surfaces import FlatSurface, vadd

SCALE = 200.0
PAD = 20.0


def _num(v: float) -> str:
    return format(v, ".12g")


def _coeffs(c) -> dict:
    enc = encode(c)
    enc.pop("approx")
    return enc


def _exact(points) -> str:
    return quoteattr(json.dumps([[_coeffs(c) for c in p] for p in points], sort_keys=True))


def trace_segments(surface: FlatSurface, start: tuple, result) -> list:
    """Planar segments (polygon, p, q) drawn by a trace."""
    segs = []
    poly, pos = start
    for ev in result.events:
        if ev.kind == "marked":
            continue
        segs.append((poly, pos, ev.point))
        if ev.kind == "crossing":
            tp, _, tr = surface.gluings[(ev.polygon, ev.edge)]
            poly, pos = tp, vadd(ev.point, tr)
    return segs


def render(surface: FlatSurface, segments=(), marks=()) -> str:
    pts = [(float(x), float(y)) for poly in surface.polygons for x, y in poly]
    xmin = min(p[0] for p in pts)
    ymax = max(p[1] for p in pts)
    xmax = max(p[0] for p in pts)
    ymin = min(p[1] for p in pts)

    def tx(x, y):
        return PAD + (float(x) - xmin) * SCALE, PAD + (ymax - float(y)) * SCALE

    width = 2 * PAD + (xmax - xmin) * SCALE
    height = 2 * PAD + (ymax - ymin) * SCALE
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'data-n="{surface.n}" data-kind="{surface.kind}">'
    ]
    for k, poly in enumerate(surface.polygons):
        coords = " ".join(f"{_num(a)},{_num(b)}" for a, b in (tx(x, y) for x, y in poly))
        out.append(
            f'<polygon points="{coords}" fill="#eef3fb" stroke="#334" stroke-width="1" '
            f'data-polygon="{k}" data-exact={_exact(poly)}/>'
        )
    for k, (_, p, q) in enumerate(segments):
        (x1, y1), (x2, y2) = tx(*p), tx(*q)
        out.append(
            f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
            f'stroke="#c22" stroke-width="1.5" data-segment="{k}" data-exact={_exact([p, q])}/>'
        )
    for _, x, label in list(surface.marked_points) + list(marks):
        cx, cy = tx(*x)
        out.append(
            f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="3" fill="#262" '
            f'data-label={quoteattr(label)} data-exact={_exact([x])}/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
