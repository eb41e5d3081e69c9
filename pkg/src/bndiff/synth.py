"""Seeded generators for synthetic networks, DAGs and sampled datasets."""

from __future__ import annotations

import numpy as np

from .model import (
    BayesianNetwork,
    EventSpace,
    SpaceKind,
    Variable,
    abbreviate,
    build_network,
    row_count,
)


def random_network(
    rng: np.random.Generator,
    n_vars: int,
    *,
    max_values: int = 4,
    max_indegree: int = 3,
    name_stem: str = "Node",
) -> BayesianNetwork:
    """A random DAG with strictly positive Dirichlet(1) CPT rows.

    Variable order is a topological order by construction (parents are
    sampled from earlier variables only).
    """
    names = [f"{name_stem}{i + 1}" for i in range(n_vars)]
    sizes = rng.integers(2, max_values + 1, size=n_vars)
    spaces = [
        EventSpace(f"space{i + 1}", SpaceKind.CATEGORICAL,
                   tuple(f"v{j + 1}" for j in range(sizes[i])))
        for i in range(n_vars)
    ]
    parents: dict[str, list[str]] = {}
    rows: dict[str, list[list[float]]] = {}
    abbrevs = abbreviate(names)
    for i in range(n_vars):
        k = int(rng.integers(0, min(max_indegree, i) + 1))
        chosen = sorted(rng.choice(i, size=k, replace=False).tolist()) if k else []
        parents[names[i]] = [names[j] for j in chosen]
        parent_vars = [
            Variable(j, names[j], abbrevs[j], spaces[j]) for j in chosen
        ]
        n_rows = row_count(parent_vars)
        table = rng.dirichlet(np.ones(sizes[i]), size=n_rows)
        rows[names[i]] = table.tolist()
    variables = [(names[i], spaces[i].id) for i in range(n_vars)]
    return build_network(spaces, variables, parents, rows)


def random_dag(
    rng: np.random.Generator, n_nodes: int, edge_prob: float = 0.3
) -> tuple[list[str], list[tuple[str, str]]]:
    """Random DAG over generic node names, edges oriented low index -> high."""
    nodes = [f"n{i}" for i in range(n_nodes)]
    edges = []
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < edge_prob:
                edges.append((nodes[i], nodes[j]))
    return nodes, edges


def sample_codes(
    net: BayesianNetwork, n_rows: int, rng: np.random.Generator
) -> np.ndarray:
    """Ancestral sampling; returns value ordinals, shape (n_rows, n_vars)."""
    n = len(net.variables)
    codes = np.zeros((n_rows, n), dtype=np.int64)
    for var in net.topological_order():
        cpt = net.cpt(var.name)
        rows = np.asarray(cpt.rows)
        config = np.zeros(n_rows, dtype=np.int64)
        for parent in cpt.parents:
            config = config * parent.space.size + codes[:, parent.index]
        probs = rows[config]  # (n_rows, |S|)
        u = rng.random(n_rows)
        codes[:, var.index] = (probs.cumsum(axis=1) < u[:, None]).sum(axis=1)
    return codes


def sample_rows(
    net: BayesianNetwork, n_rows: int, rng: np.random.Generator
) -> list[list[str]]:
    """Ancestral sampling as value names, column order = variable order."""
    codes = sample_codes(net, n_rows, rng)
    values = [v.space.values for v in net.variables]
    return [
        [values[j][codes[i, j]] for j in range(len(net.variables))]
        for i in range(n_rows)
    ]
