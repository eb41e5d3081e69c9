"""Causal top-down layered DAG layout with relevance-aware styling.

Layer assignment is longest-path from the roots; within-layer ordering is
barycenter sweeping over the dummy-expanded graph, accepting a sweep only if
it does not increase the crossing count. Ordering is computed once per
network; relevance filtering only restyles (shrink, dim, dotted, shortened),
which makes node order perfectly stable across threshold changes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Sequence

from .model import BayesianNetwork, ModelError, _toposort

SHRINK_FACTOR = 0.4
DIM_OPACITY = 0.3
SHORTEN_FACTOR = 0.5
ORDER_ROUNDS = 4

DEFAULT_RADIUS = 26.0
X_GAP = 34.0
Y_GAP = 110.0

SOLID = "solid"
DOTTED = "dotted"
NORMAL = "normal"
SHORTENED = "shortened"

Edge = tuple[str, str]


@dataclass(frozen=True)
class LayeredLayout:
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    layer: dict[str, int]
    order: dict[str, int]
    x: dict[str, float]
    y: dict[str, float]
    node_radius: dict[str, float]
    dimmed: dict[str, bool]
    edge_style: dict[Edge, str]
    edge_length_class: dict[Edge, str]
    base_radius: float


def assign_layers(
    nodes: Sequence[str], edges: Sequence[Edge]
) -> dict[str, int]:
    """Longest directed path length from any root; roots sit at layer 0."""
    order = _toposort(nodes, edges)
    if order is None:
        raise ModelError("cannot layer a cyclic graph")
    parents: dict[str, list[str]] = {n: [] for n in nodes}
    for p, c in edges:
        parents[c].append(p)
    layer: dict[str, int] = {}
    for node in order:
        layer[node] = max((layer[p] + 1 for p in parents[node]), default=0)
    return layer


def _insert_dummies(
    nodes: Sequence[str], edges: Sequence[Edge], layer: Mapping[str, int]
) -> tuple[list[str], list[Edge], dict[str, int]]:
    """Split edges spanning more than one layer with chain dummy nodes."""
    aug_nodes = list(nodes)
    aug_edges: list[Edge] = []
    aug_layer = dict(layer)
    counter = 0
    for p, c in edges:
        span = layer[c] - layer[p]
        if span <= 1:
            aug_edges.append((p, c))
            continue
        prev = p
        for step in range(1, span):
            dummy = f"__dummy{counter}"
            counter += 1
            aug_nodes.append(dummy)
            aug_layer[dummy] = layer[p] + step
            aug_edges.append((prev, dummy))
            prev = dummy
        aug_edges.append((prev, c))
    return aug_nodes, aug_edges, aug_layer


def count_crossings(
    edges: Iterable[Edge], layer: Mapping[str, int], order: Mapping[str, int]
) -> int:
    """Edge crossings between adjacent layers under the given ordering."""
    by_gap: dict[int, list[tuple[int, int]]] = {}
    for p, c in edges:
        by_gap.setdefault(layer[p], []).append((order[p], order[c]))
    total = 0
    for pairs in by_gap.values():
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                (a1, b1), (a2, b2) = pairs[i], pairs[j]
                if (a1 - a2) * (b1 - b2) < 0:
                    total += 1
    return total


def _sweep(
    by_layer: dict[int, list[str]],
    order: dict[str, int],
    neighbors: Mapping[str, list[str]],
    layers_in_turn: Sequence[int],
) -> dict[str, int]:
    """One barycenter pass; nodes without neighbors hold their position."""
    new_order = dict(order)
    for li in layers_in_turn:
        row = sorted(by_layer[li], key=lambda n: new_order[n])
        keys = {}
        for node in row:
            ns = neighbors.get(node, [])
            if ns:
                keys[node] = sum(new_order[m] for m in ns) / len(ns)
            else:
                keys[node] = float(new_order[node])
        row.sort(key=lambda n: (keys[n], new_order[n]))
        for i, node in enumerate(row):
            new_order[node] = i
    return new_order


def order_layers(
    layer: Mapping[str, int], edges: Sequence[Edge]
) -> dict[str, int]:
    """Within-layer positions after ORDER_ROUNDS down/up barycenter sweeps.

    Expects dummy nodes already inserted (every edge spans exactly one
    layer). A sweep is kept only when it does not increase crossings.
    """
    nodes = list(layer)
    by_layer: dict[int, list[str]] = {}
    for node in nodes:
        by_layer.setdefault(layer[node], []).append(node)
    order: dict[str, int] = {}
    for li, row in sorted(by_layer.items()):
        for i, node in enumerate(row):
            order[node] = i

    up_neighbors: dict[str, list[str]] = {n: [] for n in nodes}
    down_neighbors: dict[str, list[str]] = {n: [] for n in nodes}
    for p, c in edges:
        up_neighbors[c].append(p)
        down_neighbors[p].append(c)

    layer_ids = sorted(by_layer)
    best = count_crossings(edges, layer, order)
    for _ in range(ORDER_ROUNDS):
        candidate = _sweep(by_layer, order, up_neighbors, layer_ids[1:])
        crossings = count_crossings(edges, layer, candidate)
        if crossings <= best:
            order, best = candidate, crossings
        candidate = _sweep(by_layer, order, down_neighbors, layer_ids[-2::-1])
        crossings = count_crossings(edges, layer, candidate)
        if crossings <= best:
            order, best = candidate, crossings
    return order


def compute_layout(
    net: BayesianNetwork,
    *,
    base_radius: float = DEFAULT_RADIUS,
    x_gap: float = X_GAP,
    y_gap: float = Y_GAP,
) -> LayeredLayout:
    """Unstyled layout for a network: all nodes full-size and undimmed."""
    nodes = list(net.names)
    edges = [tuple(e) for e in net.edges()]
    layer = assign_layers(nodes, edges)
    aug_nodes, aug_edges, aug_layer = _insert_dummies(nodes, edges, layer)
    aug_order = order_layers(aug_layer, aug_edges)

    # compact each layer back to real nodes, preserving relative order
    order: dict[str, int] = {}
    by_layer: dict[int, list[str]] = {}
    for node in nodes:
        by_layer.setdefault(layer[node], []).append(node)
    for li, row in by_layer.items():
        row.sort(key=lambda n: aug_order[n])
        for i, node in enumerate(row):
            order[node] = i

    spacing = 2 * base_radius + x_gap
    x = {n: order[n] * spacing + base_radius for n in nodes}
    y = {n: layer[n] * y_gap + base_radius for n in nodes}
    return LayeredLayout(
        nodes=tuple(nodes),
        edges=tuple(edges),
        layer=layer,
        order=order,
        x=x,
        y=y,
        node_radius={n: base_radius for n in nodes},
        dimmed={n: False for n in nodes},
        edge_style={e: SOLID for e in edges},
        edge_length_class={e: NORMAL for e in edges},
        base_radius=base_radius,
    )


def apply_relevance_styling(
    layout: LayeredLayout,
    relevant: Iterable[str],
    evidence_vars: Iterable[str],
) -> LayeredLayout:
    """Shrink and dim irrelevant nodes; dot and shorten their edges.

    Radii and flags are recomputed from the base radius, so restyling with
    the same relevant set is idempotent.
    """
    relevant = set(relevant)
    evidence_vars = set(evidence_vars)
    if not evidence_vars <= relevant:
        raise ValueError("evidence variables must be part of the relevant set")
    unknown = relevant - set(layout.nodes)
    if unknown:
        raise ValueError(f"relevant set names unknown nodes: {sorted(unknown)}")

    radius = {
        n: layout.base_radius if n in relevant else layout.base_radius * SHRINK_FACTOR
        for n in layout.nodes
    }
    dimmed = {n: n not in relevant for n in layout.nodes}
    style = {}
    length = {}
    for p, c in layout.edges:
        collapsed = (p not in relevant), (c not in relevant)
        style[(p, c)] = DOTTED if any(collapsed) else SOLID
        length[(p, c)] = SHORTENED if all(collapsed) else NORMAL
    return replace(
        layout,
        node_radius=radius,
        dimmed=dimmed,
        edge_style=style,
        edge_length_class=length,
    )
