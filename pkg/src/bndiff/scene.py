"""Renderable geometry: pie/ring glyphs, CPT panels, legend, full scenes.

All angles are degrees measured clockwise from the 12 o'clock position.
Slices follow the event space's value order and never reorder by mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .colors import DEFAULT_PALETTE, Palette, assign_colors
from .layout import LayeredLayout, apply_relevance_styling
from .model import CPT, BayesianNetwork, Distribution, Variable, row_values
from .relevance import FilterConfig, InferenceDiff, RelevanceRanking, filter_top

FULL_SWEEP = 360.0

# Annulus proportions for the ring chart, relative to the pie radius.
RING_INNER = 1.1
RING_OUTER = 1.35

# "Strong black stroke" width for evidence nodes, relative to node radius.
EVIDENCE_STROKE = 0.12


@dataclass(frozen=True)
class Slice:
    value_index: int
    value: str
    start_angle: float
    sweep_angle: float
    color: str


@dataclass(frozen=True)
class NodeGlyph:
    name: str
    label: str
    x: float
    y: float
    radius: float
    inner_slices: tuple[Slice, ...] | None
    ring_slices: tuple[Slice, ...] | None
    inner_stroke: bool
    ring_stroke: bool
    dimmed: bool

    @property
    def full(self) -> bool:
        return self.inner_slices is not None


@dataclass(frozen=True)
class EdgeSegment:
    parent: str
    child: str
    x1: float
    y1: float
    x2: float
    y2: float
    style: str
    length_class: str


@dataclass(frozen=True)
class LegendEntry:
    value: str
    color: str


@dataclass(frozen=True)
class LegendRow:
    abbreviation: str
    name: str
    entries: tuple[LegendEntry, ...]


@dataclass(frozen=True)
class SceneModel:
    glyphs: tuple[NodeGlyph, ...]
    edges: tuple[EdgeSegment, ...]
    legend: tuple[LegendRow, ...]
    threshold: float
    e2_active: bool


@dataclass(frozen=True)
class CptHeaderEntry:
    parent_abbreviation: str
    parent_name: str
    value: str
    color: str


@dataclass(frozen=True)
class CptDensity:
    value: str
    color: str
    probability: float


@dataclass(frozen=True)
class CptBlock:
    row_index: int
    header: tuple[CptHeaderEntry, ...]
    densities: tuple[CptDensity, ...]


@dataclass(frozen=True)
class CptPanel:
    variable: str
    abbreviation: str
    blocks: tuple[CptBlock, ...]


def pie_geometry(dist: Distribution, colors: Sequence[str]) -> tuple[Slice, ...]:
    """Slices proportional to mass, clockwise from 12 o'clock, in value order.

    Zero-mass values still yield (zero-sweep) slices so the value order is
    reconstructible.
    """
    slices = []
    angle = 0.0
    for i, (value, mass) in enumerate(zip(dist.space.values, dist.masses)):
        sweep = FULL_SWEEP * mass
        slices.append(Slice(i, value, angle, sweep, colors[i % len(colors)]))
        angle += sweep
    return tuple(slices)


def node_glyph(
    var: Variable,
    pair: tuple[Distribution, Distribution],
    e1_observed: bool,
    e2_observed: bool,
    e2_active: bool,
    *,
    x: float = 0.0,
    y: float = 0.0,
    radius: float = 26.0,
    dimmed: bool = False,
    palette: Palette = DEFAULT_PALETTE,
) -> NodeGlyph:
    """Inner pie from P(X|E1) plus, when E2 is in play, a concentric ring
    from P(X|E2). Observation in a set puts a black stroke on that chart."""
    colors = assign_colors(var.space, palette)
    p1, p2 = pair
    return NodeGlyph(
        name=var.name,
        label=var.abbreviation,
        x=x,
        y=y,
        radius=radius,
        inner_slices=pie_geometry(p1, colors),
        ring_slices=pie_geometry(p2, colors) if e2_active else None,
        inner_stroke=e1_observed,
        ring_stroke=e2_observed and e2_active,
        dimmed=dimmed,
    )


def collapsed_glyph(
    var: Variable, *, x: float, y: float, radius: float
) -> NodeGlyph:
    """Shrunken, dimmed placeholder for an irrelevant variable: no charts."""
    return NodeGlyph(
        name=var.name,
        label=var.abbreviation,
        x=x,
        y=y,
        radius=radius,
        inner_slices=None,
        ring_slices=None,
        inner_stroke=False,
        ring_stroke=False,
        dimmed=True,
    )


def cpt_view(cpt: CPT, palette: Palette = DEFAULT_PALETTE) -> CptPanel:
    """Vertical CPT presentation: one block per parent-value permutation, in
    canonical row order, headed by color-coded parent values."""
    value_colors = assign_colors(cpt.variable.space, palette)
    parent_colors = [assign_colors(p.space, palette) for p in cpt.parents]
    blocks = []
    for r, row in enumerate(cpt.rows):
        header = tuple(
            CptHeaderEntry(
                parent.abbreviation,
                parent.name,
                value,
                parent_colors[k][parent.space.index_of(value)],
            )
            for k, (parent, value) in enumerate(
                zip(cpt.parents, row_values(r, cpt.parents))
            )
        )
        densities = tuple(
            CptDensity(value, value_colors[i], row[i])
            for i, value in enumerate(cpt.variable.space.values)
        )
        blocks.append(CptBlock(r, header, densities))
    return CptPanel(cpt.variable.name, cpt.variable.abbreviation, tuple(blocks))


def build_scene(
    net: BayesianNetwork,
    diff: InferenceDiff,
    ranking: RelevanceRanking,
    config: FilterConfig,
    layout: LayeredLayout,
    palette: Palette = DEFAULT_PALETTE,
) -> SceneModel:
    """Scene with full glyphs for retained variables only; everything else
    appears as a small dim disc, and the legend is pruned to match."""
    if diff.net != net:
        raise ValueError("diff was computed for a different network")
    if set(layout.nodes) != set(net.names):
        raise ValueError("layout does not cover this network's variables")

    retained = [v.name for v in filter_top(ranking, config)]
    retained_set = set(retained)
    evidence_names = {v.name for v in ranking.evidence_variables}
    styled = apply_relevance_styling(layout, retained_set, evidence_names)
    e2_active = not diff.e2.is_empty

    glyphs = []
    for var, pair in zip(net.variables, diff.pairs):
        x, y, radius = styled.x[var.name], styled.y[var.name], styled.node_radius[var.name]
        if var.name in retained_set:
            glyphs.append(
                node_glyph(
                    var,
                    pair,
                    e1_observed=diff.e1.value_of(var) is not None,
                    e2_observed=diff.e2.value_of(var) is not None,
                    e2_active=e2_active,
                    x=x,
                    y=y,
                    radius=radius,
                    dimmed=styled.dimmed[var.name],
                    palette=palette,
                )
            )
        else:
            glyphs.append(collapsed_glyph(var, x=x, y=y, radius=radius))

    edges = tuple(
        EdgeSegment(
            p,
            c,
            styled.x[p],
            styled.y[p],
            styled.x[c],
            styled.y[c],
            styled.edge_style[(p, c)],
            styled.edge_length_class[(p, c)],
        )
        for p, c in styled.edges
    )

    legend_vars = sorted(
        (net.variable(name) for name in retained),
        key=lambda v: (styled.layer[v.name], styled.order[v.name], v.index),
    )
    legend = tuple(
        LegendRow(
            v.abbreviation,
            v.name,
            tuple(
                LegendEntry(value, color)
                for value, color in zip(v.space.values, assign_colors(v.space, palette))
            ),
        )
        for v in legend_vars
    )
    return SceneModel(
        tuple(glyphs), edges, legend, config.threshold_percent, e2_active
    )


def _slice_doc(s: Slice) -> dict:
    return {
        "valueIndex": s.value_index,
        "value": s.value,
        "startAngle": s.start_angle,
        "sweepAngle": s.sweep_angle,
        "color": s.color,
    }


def scene_to_document(scene: SceneModel) -> dict:
    """Plain-dict scene export, mirroring SceneModel for UI consumption."""
    return {
        "threshold": scene.threshold,
        "e2Active": scene.e2_active,
        "glyphs": [
            {
                "name": g.name,
                "label": g.label,
                "x": g.x,
                "y": g.y,
                "radius": g.radius,
                "full": g.full,
                "dimmed": g.dimmed,
                "innerSlices": (
                    [_slice_doc(s) for s in g.inner_slices]
                    if g.inner_slices is not None
                    else None
                ),
                "ringSlices": (
                    [_slice_doc(s) for s in g.ring_slices]
                    if g.ring_slices is not None
                    else None
                ),
                "innerStroke": g.inner_stroke,
                "ringStroke": g.ring_stroke,
            }
            for g in scene.glyphs
        ],
        "edges": [
            {
                "parent": e.parent,
                "child": e.child,
                "x1": e.x1,
                "y1": e.y1,
                "x2": e.x2,
                "y2": e.y2,
                "style": e.style,
                "lengthClass": e.length_class,
            }
            for e in scene.edges
        ],
        "legend": [
            {
                "abbreviation": row.abbreviation,
                "name": row.name,
                "values": [
                    {"value": entry.value, "color": entry.color}
                    for entry in row.entries
                ],
            }
            for row in scene.legend
        ],
    }


def cpt_panel_to_document(panel: CptPanel) -> dict:
    return {
        "variable": panel.variable,
        "abbreviation": panel.abbreviation,
        "blocks": [
            {
                "rowIndex": block.row_index,
                "header": [
                    {
                        "parentAbbreviation": h.parent_abbreviation,
                        "parentName": h.parent_name,
                        "value": h.value,
                        "color": h.color,
                    }
                    for h in block.header
                ],
                "densities": [
                    {"value": d.value, "color": d.color, "probability": d.probability}
                    for d in block.densities
                ],
            }
            for block in panel.blocks
        ],
    }
