"""CPT estimation with a uniform Dirichlet prior and greedy structure search.

The structure search is hill climbing over single-edge moves (add, delete,
reverse) from the empty graph, scored by the Bayesian-Dirichlet log marginal
likelihood, with an in-degree cap. Scan order and tie-breaking are fixed so
the result is deterministic.
"""

from __future__ import annotations

import io
import csv as csv_module
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np
from scipy.special import gammaln

from .model import (
    BayesianNetwork,
    EventSpace,
    ModelError,
    SpaceKind,
    build_network,
)


@dataclass(frozen=True)
class Dataset:
    """Complete discrete records, stored as value ordinals per column."""

    columns: tuple[str, ...]
    spaces: tuple[EventSpace, ...]
    codes: np.ndarray  # shape (n_rows, n_cols), dtype int

    def __post_init__(self):
        if len(self.columns) != len(self.spaces):
            raise ModelError("one event space per column required")
        if self.codes.ndim != 2 or self.codes.shape[1] != len(self.columns):
            raise ModelError("codes shape does not match columns")

    @property
    def n_rows(self) -> int:
        return int(self.codes.shape[0])

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise ModelError(f"dataset has no column {name!r}") from None


def dataset_from_rows(
    columns: Sequence[str],
    spaces: Sequence[EventSpace],
    rows: Sequence[Sequence[str]],
) -> Dataset:
    lookup = [{v: i for i, v in enumerate(s.values)} for s in spaces]
    codes = np.zeros((len(rows), len(columns)), dtype=np.int64)
    for r, row in enumerate(rows):
        if len(row) != len(columns):
            raise ModelError(f"row {r} has {len(row)} cells, expected {len(columns)}")
        for c, cell in enumerate(row):
            try:
                codes[r, c] = lookup[c][cell]
            except KeyError:
                raise ModelError(
                    f"row {r}, column {columns[c]!r}: value {cell!r} is not in "
                    f"space {spaces[c].id!r}"
                ) from None
    return Dataset(tuple(columns), tuple(spaces), codes)


def read_csv(
    text: str, spaces: Mapping[str, EventSpace] | None = None
) -> Dataset:
    """Comma-separated text; first row holds column names.

    Spaces may be declared per column; otherwise they are inferred with value
    order equal to first appearance, as categorical spaces.
    """
    reader = csv_module.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ModelError("dataset is empty") from None
    header = [h.strip() for h in header]
    if len(set(header)) != len(header):
        raise ModelError("duplicate column names in dataset header")
    rows = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            raise ModelError(
                f"record {len(rows) + 1} has {len(row)} cells, expected {len(header)}"
            )
        cells = [c.strip() for c in row]
        if any(c == "" for c in cells):
            raise ModelError(f"record {len(rows) + 1} has a missing cell")
        rows.append(cells)

    space_list = []
    if spaces is None:
        for c, name in enumerate(header):
            seen: dict[str, None] = {}
            for row in rows:
                seen.setdefault(row[c], None)
            space_list.append(
                EventSpace(name, SpaceKind.CATEGORICAL, tuple(seen.keys()))
            )
    else:
        for name in header:
            if name not in spaces:
                raise ModelError(f"no declared event space for column {name!r}")
            space_list.append(spaces[name])
    return dataset_from_rows(header, space_list, rows)


def subsample(data: Dataset, n: int, seed: int) -> Dataset:
    """First-n of a seeded random permutation of the rows."""
    if n >= data.n_rows:
        return data
    rng = np.random.default_rng(seed)
    chosen = rng.choice(data.n_rows, size=n, replace=False)
    return Dataset(data.columns, data.spaces, data.codes[np.sort(chosen)])


@dataclass(frozen=True)
class LearnConfig:
    max_indegree: int = 2
    dirichlet_alpha: float = 1.0
    max_passes: int = 1000
    restarts: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.max_indegree < 1:
            raise ValueError("max_indegree must be >= 1")
        if self.dirichlet_alpha <= 0:
            raise ValueError("dirichlet_alpha must be > 0")
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")


def _family_counts(
    data: Dataset, child: int, parents: Sequence[int]
) -> tuple[np.ndarray, int]:
    """Contingency counts, shape (parent configs, child values)."""
    child_size = data.spaces[child].size
    config = np.zeros(data.n_rows, dtype=np.int64)
    n_configs = 1
    for p in parents:
        config = config * data.spaces[p].size + data.codes[:, p]
        n_configs *= data.spaces[p].size
    flat = config * child_size + data.codes[:, child]
    counts = np.bincount(flat, minlength=n_configs * child_size)
    return counts.reshape(n_configs, child_size).astype(np.float64), n_configs


def family_score(
    child: str, parents: Sequence[str], data: Dataset, alpha: float = 1.0
) -> float:
    """Log Dirichlet-multinomial marginal likelihood of one family."""
    c = data.column_index(child)
    ps = [data.column_index(p) for p in parents]
    return _family_score_codes(data, c, ps, alpha)


def _family_score_codes(
    data: Dataset, child: int, parents: Sequence[int], alpha: float
) -> float:
    counts, _ = _family_counts(data, child, parents)
    size = data.spaces[child].size
    row_totals = counts.sum(axis=1)
    score = (
        gammaln(alpha * size)
        - gammaln(alpha * size + row_totals)
        + (gammaln(alpha + counts) - gammaln(alpha)).sum(axis=1)
    )
    return float(score.sum())


def estimate_cpts(
    data: Dataset,
    parents: Mapping[str, Sequence[str]],
    alpha: float = 1.0,
) -> BayesianNetwork:
    """Network over the dataset columns with Dirichlet-smoothed CPT rows.

    Each row is (count + alpha) / (total + alpha * |S|), so entries are
    strictly positive for alpha > 0. An empty dataset degrades to uniform
    rows.
    """
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    rows: dict[str, list[list[float]]] = {}
    for name in data.columns:
        c = data.column_index(name)
        ps = [data.column_index(p) for p in parents.get(name, ())]
        counts, _ = _family_counts(data, c, ps)
        size = data.spaces[c].size
        totals = counts.sum(axis=1, keepdims=True)
        rows[name] = ((counts + alpha) / (totals + alpha * size)).tolist()
    variables = [(name, data.spaces[i].id) for i, name in enumerate(data.columns)]
    return build_network(data.spaces, variables, dict(parents), rows)


@dataclass
class HillClimbResult:
    parents: dict[str, list[str]]
    total_score: float
    accepted_scores: list[float] = field(default_factory=list)


def hill_climb(data: Dataset, config: LearnConfig) -> HillClimbResult:
    """Greedy single-edge search from the empty graph.

    Candidate moves are scanned by child index, then parent index, then move
    kind (add, delete, reverse); the best strictly-improving move is applied
    each pass until none improves or max_passes is hit.
    """
    base = _climb_once(data, config, scan_order=None)
    if config.restarts <= 0:
        return base
    best = base
    rng = np.random.default_rng(config.seed)
    n = len(data.columns)
    for _ in range(config.restarts):
        order = rng.permutation(n * n).tolist()
        candidate = _climb_once(data, config, scan_order=order)
        if candidate.total_score > best.total_score + 1e-9:
            best = candidate
    return best


# Minimum score gain for a move to count as an improvement. Guards against
# accepting float noise, far below any real likelihood difference.
_MIN_GAIN = 1e-9


def _climb_once(
    data: Dataset, config: LearnConfig, scan_order: list[int] | None
) -> HillClimbResult:
    n = len(data.columns)
    alpha = config.dirichlet_alpha
    parent_sets: list[list[int]] = [[] for _ in range(n)]
    cache: dict[tuple[int, tuple[int, ...]], float] = {}

    def score(child: int, parents: Sequence[int]) -> float:
        key = (child, tuple(sorted(parents)))
        if key not in cache:
            cache[key] = _family_score_codes(data, child, parents, alpha)
        return cache[key]

    current = [score(c, ()) for c in range(n)]
    accepted: list[float] = []

    def children_lists() -> list[list[int]]:
        children: list[list[int]] = [[] for _ in range(n)]
        for child in range(n):
            for parent in parent_sets[child]:
                children[parent].append(child)
        return children

    def reachable_from(
        children: list[list[int]], start: int, skip_edge: tuple[int, int] | None = None
    ) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for child in children[node]:
                if (node, child) != skip_edge and child not in seen:
                    seen.add(child)
                    stack.append(child)
        return seen

    pair_order = list(range(n * n)) if scan_order is None else scan_order

    for _ in range(config.max_passes):
        best_gain = 0.0
        best_move = None
        children = children_lists()
        descend = [reachable_from(children, i) for i in range(n)]

        for code in pair_order:
            child, parent = divmod(code, n)
            if child == parent:
                continue
            has_edge = parent in parent_sets[child]
            # add
            if not has_edge:
                if (
                    len(parent_sets[child]) < config.max_indegree
                    and parent not in descend[child]
                ):
                    gain = (
                        score(child, parent_sets[child] + [parent])
                        - current[child]
                    )
                    if gain > best_gain + _MIN_GAIN:
                        best_gain = gain
                        best_move = ("add", parent, child)
            else:
                # delete
                reduced = [p for p in parent_sets[child] if p != parent]
                gain = score(child, reduced) - current[child]
                if gain > best_gain + _MIN_GAIN:
                    best_gain = gain
                    best_move = ("delete", parent, child)
                # reverse: delete parent->child, add child->parent
                if len(parent_sets[parent]) < config.max_indegree:
                    if child not in reachable_from(
                        children, parent, skip_edge=(parent, child)
                    ):
                        gain = (
                            score(child, reduced)
                            - current[child]
                            + score(parent, parent_sets[parent] + [child])
                            - current[parent]
                        )
                        if gain > best_gain + _MIN_GAIN:
                            best_gain = gain
                            best_move = ("reverse", parent, child)

        if best_move is None:
            break
        kind, parent, child = best_move
        if kind == "add":
            parent_sets[child] = sorted(parent_sets[child] + [parent])
        elif kind == "delete":
            parent_sets[child] = [p for p in parent_sets[child] if p != parent]
        else:
            parent_sets[child] = [p for p in parent_sets[child] if p != parent]
            parent_sets[parent] = sorted(parent_sets[parent] + [child])
            current[parent] = score(parent, parent_sets[parent])
        current[child] = score(child, parent_sets[child])
        accepted.append(sum(current))

    names = data.columns
    parents = {
        names[c]: [names[p] for p in parent_sets[c]] for c in range(n)
    }
    return HillClimbResult(parents, sum(current), accepted)


def learn_structure(data: Dataset, config: LearnConfig) -> BayesianNetwork:
    """Hill-climbed structure with Dirichlet-estimated CPTs."""
    if data.n_rows == 0:
        raise ModelError("cannot learn a structure from an empty dataset")
    result = hill_climb(data, config)
    return estimate_cpts(data, result.parents, config.dirichlet_alpha)
