"""Minimal deterministic SVG drawing of a Newton polygon."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .newton import NewtonPolygon

WIDTH, HEIGHT = 640, 480
MARGIN = 60


def _f(v: float) -> str:
    return f"{v:.2f}"


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def polygon_svg(poly: NewtonPolygon, title: str = "") -> str:
    pts = list(poly.points) + list(poly.hull)
    if pts:
        xmin, xmax = 0, max(max(x for x, _ in pts), 1)
        ymin = min(y for _, y in pts)
        ymax = max(max(y for _, y in pts), ymin + 1)
    else:
        xmin, xmax, ymin, ymax = 0, 1, 0, 1
    ymax += 1
    sx = (WIDTH - 2 * MARGIN) / (xmax - xmin)
    sy = (HEIGHT - 2 * MARGIN) / (ymax - ymin)

    def cx(x):
        return MARGIN + (x - xmin) * sx

    def cy(y):
        return HEIGHT - MARGIN - (y - ymin) * sy

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="30" font-family="monospace" font-size="16">{escape(title)}</text>')
    out.append('<g fill="#bbbbbb">')
    for x in range(xmin, xmax + 1):
        for y in range(ymin, ymax + 1):
            out.append(f'<circle cx="{_f(cx(x))}" cy="{_f(cy(y))}" r="1.50"/>')
    out.append("</g>")
    out.append(
        f'<line x1="{_f(cx(0))}" y1="{_f(cy(ymin))}" x2="{_f(cx(0))}" y2="{_f(cy(ymax))}" stroke="black" stroke-width="1"/>'
    )
    if poly.hull:
        region = [(cx(x), cy(y)) for x, y in poly.hull]
        region += [(cx(poly.hull[-1][0]), cy(ymax)), (cx(poly.hull[0][0]), cy(ymax))]
        coords = " ".join(f"{_f(a)},{_f(b)}" for a, b in region)
        out.append(f'<polygon points="{coords}" fill="#dde8f6" stroke="none"/>')
        line = " ".join(f"{_f(cx(x))},{_f(cy(y))}" for x, y in poly.hull)
        out.append(f'<polyline points="{line}" fill="none" stroke="#1f4e9c" stroke-width="2"/>')
    for (x0, y0), (x1, y1), s in zip(poly.hull, poly.hull[1:], poly.slopes):
        mx, my = (cx(x0) + cx(x1)) / 2, (cy(y0) + cy(y1)) / 2
        out.append(
            f'<text x="{_f(mx + 6)}" y="{_f(my + 18)}" font-family="monospace" font-size="13" fill="#1f4e9c">'
            f"slope {_frac(s.value)} (x{s.multiplicity})</text>"
        )
    for x, y in poly.points:
        out.append(f'<circle cx="{_f(cx(x))}" cy="{_f(cy(y))}" r="4.00" fill="#c0392b"/>')
        out.append(
            f'<text x="{_f(cx(x) + 6)}" y="{_f(cy(y) - 6)}" font-family="monospace" font-size="12">({x},{y})</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
