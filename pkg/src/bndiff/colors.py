"""Event-space color assignment from a fixed six-color palette.

Categorical spaces walk the palette in its given order, which is arranged so
that no two consecutive picks sit within 60 degrees of hue of each other.
Ordered spaces instead walk a blue-to-red hue path. Spaces larger than the
palette cycle it; the value order itself never changes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import EventSpace, SpaceKind

MIN_CATEGORICAL_HUE_GAP = 60.0

# Hues above the wrap point are treated as "red side" (negative) when
# building the ordered blue-to-red traversal; hues bluer than the anchor
# (the violet side) only enter that traversal after red.
_RED_WRAP = 300.0
_BLUE_ANCHOR = 240.0


@dataclass(frozen=True)
class Palette:
    """Exactly six pairwise-distinct sRGB colors."""

    colors: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != 6:
            raise ValueError("palette must contain exactly 6 colors")
        if len(set(c.lower() for c in self.colors)) != 6:
            raise ValueError("palette colors must be pairwise distinct")


DEFAULT_PALETTE = Palette(
    ("#4C72B0", "#DD8452", "#55A868", "#C44E52", "#8172B3", "#CCB974")
)


def hue_of(color: str) -> float:
    """HSL hue in [0, 360) of an #rrggbb color."""
    value = color.lstrip("#")
    r, g, b = (int(value[i : i + 2], 16) / 255.0 for i in (0, 2, 4))
    hi, lo = max(r, g, b), min(r, g, b)
    if hi == lo:
        return 0.0
    d = hi - lo
    if hi == r:
        h = ((g - b) / d) % 6.0
    elif hi == g:
        h = (b - r) / d + 2.0
    else:
        h = (r - g) / d + 4.0
    return h * 60.0


def hue_distance(a: float, b: float) -> float:
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


def _signed_hue(color: str) -> float:
    h = hue_of(color)
    return h - 360.0 if h > _RED_WRAP else h


def _ordered_path(palette: Palette) -> tuple[list[str], list[str]]:
    """(blue-to-red colors, violet-side leftovers), each hue-descending."""
    head = sorted(
        (c for c in palette.colors if _signed_hue(c) <= _BLUE_ANCHOR),
        key=_signed_hue,
        reverse=True,
    )
    tail = sorted(
        (c for c in palette.colors if _signed_hue(c) > _BLUE_ANCHOR),
        key=_signed_hue,
        reverse=True,
    )
    return head, tail


def assign_colors(space: EventSpace, palette: Palette = DEFAULT_PALETTE) -> tuple[str, ...]:
    """One color per value, in the space's fixed value order.

    A pure function of (space kind, space size, palette): identical spaces
    always receive identical mappings.
    """
    n = space.size
    if space.kind is not SpaceKind.ORDERED:
        return tuple(palette.colors[i % len(palette.colors)] for i in range(n))

    head, tail = _ordered_path(palette)
    if n == 1:
        return (head[0],)
    if n <= len(head):
        # evenly spaced stops along the blue-to-red path
        return tuple(head[round(i * (len(head) - 1) / (n - 1))] for i in range(n))
    path = head + tail
    return tuple(path[i % len(path)] for i in range(n))
