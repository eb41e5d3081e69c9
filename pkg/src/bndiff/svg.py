"""Deterministic SVG 1.1 emission for scene models.

Output is byte-identical for identical scenes: numbers use fixed three-digit
formatting and elements are emitted in scene order. Each variable gets one
group element tagged with its name.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape, quoteattr

from .layout import DIM_OPACITY, DOTTED, SHORTEN_FACTOR, SHORTENED
from .scene import EVIDENCE_STROKE, RING_INNER, RING_OUTER, NodeGlyph, SceneModel, Slice

MARGIN = 40.0
LEGEND_GAP = 80.0
LEGEND_ROW_H = 26.0
LEGEND_SWATCH = 12.0
EDGE_COLOR = "#8A8A8A"
HAIRLINE_COLOR = "#D0D0D0"
COLLAPSED_FILL = "#C0C0C0"
FONT = "Helvetica, Arial, sans-serif"


def _fmt(value: float) -> str:
    out = f"{value:.3f}"
    return "0.000" if out == "-0.000" else out


def _polar(cx: float, cy: float, r: float, angle_deg: float) -> tuple[float, float]:
    """Point at `angle_deg` clockwise from 12 o'clock, screen coordinates."""
    theta = math.radians(angle_deg)
    return cx + r * math.sin(theta), cy - r * math.cos(theta)


def _pie_slice_path(cx: float, cy: float, r: float, s: Slice) -> str:
    x0, y0 = _polar(cx, cy, r, s.start_angle)
    x1, y1 = _polar(cx, cy, r, s.start_angle + s.sweep_angle)
    large = 1 if s.sweep_angle > 180.0 else 0
    return (
        f"M {_fmt(cx)},{_fmt(cy)} L {_fmt(x0)},{_fmt(y0)} "
        f"A {_fmt(r)},{_fmt(r)} 0 {large} 1 {_fmt(x1)},{_fmt(y1)} Z"
    )


def _ring_slice_path(
    cx: float, cy: float, inner: float, outer: float, s: Slice
) -> str:
    a0, a1 = s.start_angle, s.start_angle + s.sweep_angle
    ox0, oy0 = _polar(cx, cy, outer, a0)
    ox1, oy1 = _polar(cx, cy, outer, a1)
    ix0, iy0 = _polar(cx, cy, inner, a0)
    ix1, iy1 = _polar(cx, cy, inner, a1)
    large = 1 if s.sweep_angle > 180.0 else 0
    return (
        f"M {_fmt(ox0)},{_fmt(oy0)} "
        f"A {_fmt(outer)},{_fmt(outer)} 0 {large} 1 {_fmt(ox1)},{_fmt(oy1)} "
        f"L {_fmt(ix1)},{_fmt(iy1)} "
        f"A {_fmt(inner)},{_fmt(inner)} 0 {large} 0 {_fmt(ix0)},{_fmt(iy0)} Z"
    )


def _circle(cx, cy, r, fill=None, stroke=None, width=None) -> str:
    parts = [f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}"']
    parts.append(f' fill="{fill}"' if fill else ' fill="none"')
    if stroke:
        parts.append(f' stroke="{stroke}" stroke-width="{_fmt(width)}"')
    parts.append("/>")
    return "".join(parts)


def _chart(cx: float, cy: float, r: float, slices: tuple[Slice, ...], ring=False,
           inner_r: float = 0.0) -> list[str]:
    live = [s for s in slices if s.sweep_angle > 0.0]
    out = []
    if len(live) == 1 and abs(live[0].sweep_angle - 360.0) < 1e-9:
        color = live[0].color
        if ring:
            mid = (inner_r + r) / 2.0
            out.append(_circle(cx, cy, mid, stroke=color, width=r - inner_r))
        else:
            out.append(_circle(cx, cy, r, fill=color))
        return out
    for s in live:
        if ring:
            d = _ring_slice_path(cx, cy, inner_r, r, s)
        else:
            d = _pie_slice_path(cx, cy, r, s)
        out.append(f'<path d="{d}" fill="{s.color}"/>')
    return out


def _label(x: float, y: float, label: str, size: float) -> str:
    """Abbreviation text; a trailing number renders as a subscript."""
    letter = label.rstrip("0123456789")
    suffix = label[len(letter):]
    body = escape(letter)
    if suffix:
        body += (
            f'<tspan font-size="{_fmt(size * 0.65)}" baseline-shift="sub">'
            f"{escape(suffix)}</tspan>"
        )
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="middle" '
        f'dominant-baseline="central" font-family="{FONT}" '
        f'font-size="{_fmt(size)}" fill="#222222">{body}</text>'
    )


def _glyph_group(g: NodeGlyph) -> str:
    parts = [f"<g class={quoteattr('variable ' + ('glyph-full' if g.full else 'glyph-collapsed'))} "
             f"id={quoteattr('var-' + g.name)} data-name={quoteattr(g.name)}"]
    if g.dimmed:
        parts.append(f' opacity="{_fmt(DIM_OPACITY)}"')
    parts.append(">")
    if not g.full:
        parts.append(_circle(g.x, g.y, g.radius, fill=COLLAPSED_FILL))
        parts.append(_label(g.x, g.y, g.label, g.radius * 0.9))
        parts.append("</g>")
        return "".join(parts)

    parts.extend(_chart(g.x, g.y, g.radius, g.inner_slices))
    if g.inner_stroke:
        parts.append(
            _circle(g.x, g.y, g.radius, stroke="#000000", width=g.radius * EVIDENCE_STROKE)
        )
    else:
        parts.append(_circle(g.x, g.y, g.radius, stroke=HAIRLINE_COLOR, width=1.0))
    if g.ring_slices is not None:
        inner, outer = g.radius * RING_INNER, g.radius * RING_OUTER
        parts.extend(_chart(g.x, g.y, outer, g.ring_slices, ring=True, inner_r=inner))
        if g.ring_stroke:
            width = g.radius * EVIDENCE_STROKE * 0.75
            parts.append(_circle(g.x, g.y, outer, stroke="#000000", width=width))
            parts.append(_circle(g.x, g.y, inner, stroke="#000000", width=width))
    parts.append(_label(g.x, g.y, g.label, g.radius * 0.85))
    parts.append("</g>")
    return "".join(parts)


def _edge_line(edge, radius: dict, ring: dict) -> str:
    dx, dy = edge.x2 - edge.x1, edge.y2 - edge.y1
    length = math.hypot(dx, dy)
    if length == 0.0:
        return ""
    ux, uy = dx / length, dy / length

    def reach(name: str) -> float:
        r = radius[name]
        return r * (RING_OUTER if ring[name] else 1.0) + 2.0

    x1 = edge.x1 + ux * reach(edge.parent)
    y1 = edge.y1 + uy * reach(edge.parent)
    x2 = edge.x2 - ux * reach(edge.child)
    y2 = edge.y2 - uy * reach(edge.child)
    if edge.length_class == SHORTENED:
        trim = SHORTEN_FACTOR / 2.0
        nx1 = x1 + (x2 - x1) * trim
        ny1 = y1 + (y2 - y1) * trim
        x2 = x2 - (x2 - x1) * trim
        y2 = y2 - (y2 - y1) * trim
        x1, y1 = nx1, ny1
    dash = ' stroke-dasharray="4,4"' if edge.style == DOTTED else ""
    return (
        f'<line class="edge" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
        f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{EDGE_COLOR}" '
        f'stroke-width="1.5"{dash} marker-end="url(#arrow)"/>'
    )


def _legend_group(scene: SceneModel, x0: float) -> list[str]:
    parts = [f'<g class="legend" transform="translate({_fmt(x0)},{_fmt(MARGIN)})">']
    y = 0.0
    for row in scene.legend:
        letter_x = 0.0
        parts.append(_label(letter_x, y + LEGEND_SWATCH / 2, row.abbreviation, 14.0))
        parts.append(
            f'<text x="22" y="{_fmt(y + LEGEND_SWATCH / 2)}" dominant-baseline="central" '
            f'font-family="{FONT}" font-size="13" fill="#222222">{escape(row.name)}</text>'
        )
        x = 160.0
        for entry in row.entries:
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(LEGEND_SWATCH)}" '
                f'height="{_fmt(LEGEND_SWATCH)}" fill="{entry.color}"/>'
            )
            parts.append(
                f'<text x="{_fmt(x + LEGEND_SWATCH + 4)}" y="{_fmt(y + LEGEND_SWATCH / 2)}" '
                f'dominant-baseline="central" font-family="{FONT}" font-size="12" '
                f'fill="#444444">{escape(entry.value)}</text>'
            )
            x += LEGEND_SWATCH + 10 + 7.5 * len(entry.value)
        y += LEGEND_ROW_H
    parts.append("</g>")
    return parts


def render_svg(scene: SceneModel) -> str:
    """SVG 1.1 document text; byte-identical for identical scenes."""
    max_x = max((g.x + g.radius * RING_OUTER for g in scene.glyphs), default=100.0)
    max_y = max((g.y + g.radius * RING_OUTER for g in scene.glyphs), default=100.0)
    legend_x = max_x + LEGEND_GAP
    legend_w = 170.0 + max(
        (
            sum(LEGEND_SWATCH + 10 + 7.5 * len(e.value) for e in row.entries)
            for row in scene.legend
        ),
        default=0.0,
    )
    width = legend_x + legend_w + MARGIN
    height = max(max_y + MARGIN, MARGIN + LEGEND_ROW_H * len(scene.legend) + MARGIN)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<defs>"
        '<marker id="arrow" viewBox="0 0 10 10" refX="8" refY="5" '
        'markerWidth="7" markerHeight="7" orient="auto">'
        f'<path d="M 0,0 L 10,5 L 0,10 Z" fill="{EDGE_COLOR}"/>'
        "</marker>"
        "</defs>",
        f'<g class="structure" transform="translate({_fmt(MARGIN)},{_fmt(MARGIN)})">',
    ]
    radius = {g.name: g.radius for g in scene.glyphs}
    ring = {g.name: g.ring_slices is not None for g in scene.glyphs}
    for edge in scene.edges:
        line = _edge_line(edge, radius, ring)
        if line:
            parts.append(line)
    for glyph in scene.glyphs:
        parts.append(_glyph_group(glyph))
    parts.append("</g>")
    parts.extend(_legend_group(scene, MARGIN + legend_x))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
