"""Deterministic SVG rendering of spectral pictures in the modulus plane.

Fixed 600x400 viewport; area primitives are filled light gray, segments get
2pt strokes, points 2px dots, geometric families dotted marker rays with a
truncated run of members and an accumulation marker.  Output is byte-stable:
primitives are drawn in normal-form order and every coordinate is formatted
to six decimal places.  No timestamps, no random ids.
"""

from __future__ import annotations

import math

from .spectra import (
    GeometricFamily,
    Interval,
    PictureSet,
    Point,
    SpectralPicture,
)

WIDTH, HEIGHT = 600, 400
MARGIN = 46
GEOM_MEMBERS = 12

AREA_FILL = "#d3d3d3"
BASE_STROKE = "#9a9a9a"
TOP_STROKE = "#000000"


def _fmt(x: float) -> str:
    return f"{x:.6f}"


class _Canvas:
    """Collects SVG elements with a fixed data-to-pixel transform."""

    def __init__(self, xmax: float, ymax: float):
        self.xmax = xmax
        self.ymax = ymax
        self.parts: list[str] = []

    def px(self, x: float) -> float:
        return MARGIN + (WIDTH - 2 * MARGIN) * x / self.xmax

    def py(self, y: float) -> float:
        return HEIGHT - MARGIN - (HEIGHT - 2 * MARGIN) * y / self.ymax

    def rect(self, x0, y0, x1, y1, fill):
        self.parts.append(
            f'<rect x="{_fmt(self.px(x0))}" y="{_fmt(self.py(y1))}" '
            f'width="{_fmt(self.px(x1) - self.px(x0))}" '
            f'height="{_fmt(self.py(y0) - self.py(y1))}" fill="{fill}" />'
        )

    def line(self, x0, y0, x1, y1, stroke, width=2.0, dashed=False):
        dash = ' stroke-dasharray="3 3"' if dashed else ""
        self.parts.append(
            f'<line x1="{_fmt(self.px(x0))}" y1="{_fmt(self.py(y0))}" '
            f'x2="{_fmt(self.px(x1))}" y2="{_fmt(self.py(y1))}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"{dash} />'
        )

    def dot(self, x, y, fill, r=2.0):
        self.parts.append(
            f'<circle cx="{_fmt(self.px(x))}" cy="{_fmt(self.py(y))}" '
            f'r="{_fmt(r)}" fill="{fill}" />'
        )

    def ring(self, x, y, stroke, r=3.0):
        self.parts.append(
            f'<circle cx="{_fmt(self.px(x))}" cy="{_fmt(self.py(y))}" '
            f'r="{_fmt(r)}" fill="none" stroke="{stroke}" stroke-width="1.000000" />'
        )

    def text(self, x_px, y_px, s, size=12):
        self.parts.append(
            f'<text x="{_fmt(x_px)}" y="{_fmt(y_px)}" font-family="monospace" '
            f'font-size="{size}" fill="#000000">{s}</text>'
        )


def _data_bounds(pictures) -> tuple[float, float]:
    xmax = ymax = 1.0
    for pic in pictures:
        for p, q in pic.primitives:
            xmax = max(xmax, _rmax(p))
            ymax = max(ymax, _rmax(q))
    return xmax * 1.15, ymax * 1.25


def _rmax(r) -> float:
    if isinstance(r, Interval):
        return r.hi
    if isinstance(r, Point):
        return r.r
    return r.r0


def _draw_product(c: _Canvas, p, q, stroke, fill):
    gp, gq = isinstance(p, GeometricFamily), isinstance(q, GeometricFamily)
    if gp or gq:
        fam, other, axis = (p, q, 0) if gp else (q, p, 1)
        members = fam.members(GEOM_MEMBERS)
        for r in members:
            _draw_product(c, *((Point(r), other) if axis == 0 else (other, Point(r))), stroke, fill)
        # dotted ray toward the accumulation point, plus a hollow marker at 0
        anchor = _rep_value(other)
        lo = (members[-1], anchor) if axis == 0 else (anchor, members[-1])
        hi = (0.0, anchor) if axis == 0 else (anchor, 0.0)
        c.line(lo[0], lo[1], hi[0], hi[1], stroke, width=1.0, dashed=True)
        c.ring(hi[0], hi[1], stroke)
        return
    if isinstance(p, Interval) and isinstance(q, Interval):
        c.rect(p.lo, q.lo, p.hi, q.hi, fill)
        return
    if isinstance(p, Interval):
        c.line(p.lo, q.r, p.hi, q.r, stroke)
        return
    if isinstance(q, Interval):
        c.line(p.r, q.lo, p.r, q.hi, stroke)
        return
    c.dot(p.r, q.r, stroke)


def _rep_value(r) -> float:
    if isinstance(r, Interval):
        return r.lo
    return r.r


def render_svg(pictures: PictureSet, title: str) -> str:
    """One SVG overlaying sigma_T (gray) and sigma_Te (black) glyphs."""
    base = pictures.sigma_t.normal_form()
    top = pictures.sigma_te.normal_form()
    xmax, ymax = _data_bounds([base, top])
    c = _Canvas(xmax, ymax)
    # axes
    c.line(0.0, 0.0, xmax, 0.0, "#444444", width=1.0)
    c.line(0.0, 0.0, 0.0, ymax, "#444444", width=1.0)
    for pic, stroke, fill in ((base, BASE_STROKE, AREA_FILL), (top, TOP_STROKE, TOP_STROKE)):
        for p, q in pic.primitives:
            _draw_product(c, p, q, stroke, fill)
    c.text(MARGIN, 18, title)
    c.text(MARGIN, 32, f"{base.label} (gray), {top.label} (black)")
    c.text(WIDTH - MARGIN - 30, HEIGHT - MARGIN + 16, "|z1|")
    c.text(8, MARGIN, "|z2|")
    body = "\n".join(c.parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff" />\n'
        f"{body}\n</svg>\n"
    )


def render_single_svg(picture: SpectralPicture, title: str) -> str:
    """SVG of one labeled picture, drawn in black."""
    pic = picture.normal_form()
    xmax, ymax = _data_bounds([pic])
    c = _Canvas(xmax, ymax)
    c.line(0.0, 0.0, xmax, 0.0, "#444444", width=1.0)
    c.line(0.0, 0.0, 0.0, ymax, "#444444", width=1.0)
    for p, q in pic.primitives:
        _draw_product(c, p, q, TOP_STROKE, AREA_FILL)
    c.text(MARGIN, 18, title)
    body = "\n".join(c.parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff" />\n'
        f"{body}\n</svg>\n"
    )
