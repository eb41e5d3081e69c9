"""Exact posterior computation P(X | E) by variable elimination.

Evidence-restricted factors are built once per evidence set and reused
across the per-variable queries. A brute-force joint-enumeration oracle
(``enumerate_posteriors``) is included for verification; it is kept
independent of the elimination path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .model import (
    BayesianNetwork,
    Distribution,
    EvidenceSet,
    ModelError,
    Variable,
    point_mass,
    row_index,
)

# Intermediate factor tables whose largest entry drops below this are
# rescaled to stop a long chain of small masses underflowing to zero.
UNDERFLOW_FLOOR = 1e-300


class ImpossibleEvidenceError(ModelError):
    """The evidence set has probability zero under the model."""

    def __init__(self, message: str, which_set: int | None = None):
        super().__init__(message)
        self.which_set = which_set


@dataclass(frozen=True)
class Factor:
    """A nonnegative table over the joint ordinals of its scope.

    The table has one axis per scope variable, so its C-order flattening is
    the canonical mixed-radix order (last scope variable fastest).
    """

    scope: tuple[Variable, ...]
    table: np.ndarray

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(v.index for v in self.scope)


@dataclass(frozen=True)
class PosteriorSet:
    """One posterior Distribution per variable under a fixed evidence set."""

    evidence: EvidenceSet
    posteriors: tuple[Distribution, ...]


def _cpt_factor(net: BayesianNetwork, name: str) -> Factor:
    cpt = net.cpt(name)
    scope = cpt.parents + (cpt.variable,)
    shape = tuple(v.space.size for v in scope)
    table = np.asarray(cpt.rows, dtype=np.float64).reshape(shape)
    return Factor(scope, table)


def _restrict(factor: Factor, observed: Mapping[int, int]) -> Factor:
    """Slice observed variables out of a factor's scope."""
    keep = [v for v in factor.scope if v.index not in observed]
    if len(keep) == len(factor.scope):
        return factor
    indexer = tuple(
        observed[v.index] if v.index in observed else slice(None)
        for v in factor.scope
    )
    return Factor(tuple(keep), factor.table[indexer])


def _product(a: Factor, b: Factor) -> Factor:
    scope = a.scope + tuple(v for v in b.scope if v.index not in a.indices)
    pos = {v.index: i for i, v in enumerate(scope)}
    ndim = len(scope)

    def aligned(f: Factor) -> np.ndarray:
        dst = [pos[v.index] for v in f.scope]
        order = sorted(range(len(dst)), key=lambda i: dst[i])
        arranged = np.transpose(f.table, order)
        shape = [1] * ndim
        for i, v in enumerate(f.scope):
            shape[dst[i]] = v.space.size
        return arranged.reshape(shape)

    return Factor(scope, aligned(a) * aligned(b))


def _marginalize(factor: Factor, var: Variable) -> Factor:
    axis = factor.indices.index(var.index)
    scope = tuple(v for v in factor.scope if v.index != var.index)
    return Factor(scope, factor.table.sum(axis=axis))


def _guard(table: np.ndarray) -> np.ndarray:
    peak = table.max() if table.size else 0.0
    if peak == 0.0:
        return table
    if peak < UNDERFLOW_FLOOR:
        return table / peak
    return table


def _eliminate(factors: list[Factor], order: Sequence[Variable]) -> list[Factor]:
    """Sum each variable in ``order`` out of the running factor set."""
    factors = list(factors)
    for var in order:
        related = [f for f in factors if var.index in f.indices]
        if not related:
            continue
        factors = [f for f in factors if var.index not in f.indices]
        product = related[0]
        for other in related[1:]:
            product = Factor(product.scope, _guard(product.table))
            product = _product(product, other)
        factors.append(_marginalize(product, var))
    return factors


def _scalar(factors: list[Factor]) -> float:
    total = 1.0
    for f in factors:
        total *= float(f.table.sum())
    return total


def elimination_order(net: BayesianNetwork, evidence: EvidenceSet) -> list[Variable]:
    """Greedy min-fill order over the moralized graph of unobserved variables.

    Ties break by ascending variable index, which makes the order (and
    everything downstream) deterministic.
    """
    observed = set(evidence.observed_indices())
    remaining = [v.index for v in net.variables if v.index not in observed]
    adjacent: dict[int, set[int]] = {i: set() for i in remaining}

    for cpt in net.cpts:
        family = [v.index for v in (*cpt.parents, cpt.variable) if v.index not in observed]
        for i in family:
            for j in family:
                if i != j:
                    adjacent[i].add(j)

    order: list[int] = []
    alive = set(remaining)
    while alive:
        best = None
        best_fill = None
        for i in sorted(alive):
            neighbors = [j for j in adjacent[i] if j in alive]
            fill = 0
            for a in range(len(neighbors)):
                for b in range(a + 1, len(neighbors)):
                    if neighbors[b] not in adjacent[neighbors[a]]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best, best_fill = i, fill
        neighbors = [j for j in adjacent[best] if j in alive]
        for a in range(len(neighbors)):
            for b in range(a + 1, len(neighbors)):
                adjacent[neighbors[a]].add(neighbors[b])
                adjacent[neighbors[b]].add(neighbors[a])
        alive.remove(best)
        order.append(best)
    return [net.variables[i] for i in order]


def _observed_ordinals(net: BayesianNetwork, evidence: EvidenceSet) -> dict[int, int]:
    out = {}
    for i in evidence.observed_indices():
        var = net.variables[i]
        out[i] = var.space.index_of(evidence.slots[i])
    return out


def _restricted_factors(net: BayesianNetwork, observed: Mapping[int, int]) -> list[Factor]:
    return [_restrict(_cpt_factor(net, v.name), observed) for v in net.variables]


def _query(
    factors: list[Factor], order: Sequence[Variable], target: Variable
) -> Distribution:
    kept = _eliminate(factors, [v for v in order if v.index != target.index])
    result = Factor((target,), np.ones(target.space.size))
    for f in kept:
        result = _product(result, f) if f.scope else Factor(
            result.scope, result.table * float(f.table)
        )
        result = Factor(result.scope, _guard(result.table))
    table = result.table
    if table.ndim != 1:  # pragma: no cover - elimination covered full scope
        axis = tuple(i for i, v in enumerate(result.scope) if v.index != target.index)
        table = table.sum(axis=axis)
    z = table.sum()
    if z <= 0.0:
        raise ImpossibleEvidenceError("evidence has probability 0 under the model")
    return Distribution(target.space, tuple(table / z))


def joint_probability(net: BayesianNetwork, full_assignment: Mapping[str, str]) -> float:
    """Chain-rule probability of one complete assignment."""
    missing = [name for name in net.names if name not in full_assignment]
    if missing:
        raise ModelError(f"assignment is missing values for: {', '.join(missing)}")
    prob = 1.0
    for cpt in net.cpts:
        r = row_index([full_assignment[p.name] for p in cpt.parents], cpt.parents)
        col = cpt.variable.space.index_of(full_assignment[cpt.variable.name])
        prob *= cpt.rows[r][col]
    return prob


def posterior(
    net: BayesianNetwork, evidence: EvidenceSet, target: Variable
) -> Distribution:
    """Exact P(target | evidence); a point mass if target is observed."""
    observed = _observed_ordinals(net, evidence)
    factors = _restricted_factors(net, observed)
    order = elimination_order(net, evidence)
    if target.index in observed:
        if _scalar(_eliminate(factors, order)) <= 0.0:
            raise ImpossibleEvidenceError("evidence has probability 0 under the model")
        return point_mass(target.space, evidence.slots[target.index])
    return _query(factors, order, target)


def posterior_all(net: BayesianNetwork, evidence: EvidenceSet) -> PosteriorSet:
    """P(X | evidence) for every variable X, sharing the restricted factors."""
    observed = _observed_ordinals(net, evidence)
    factors = _restricted_factors(net, observed)
    order = elimination_order(net, evidence)
    if _scalar(_eliminate(factors, order)) <= 0.0:
        raise ImpossibleEvidenceError("evidence has probability 0 under the model")
    posteriors = []
    for var in net.variables:
        if var.index in observed:
            posteriors.append(point_mass(var.space, evidence.slots[var.index]))
        else:
            posteriors.append(_query(factors, order, var))
    return PosteriorSet(evidence, tuple(posteriors))


def enumerate_posteriors(net: BayesianNetwork, evidence: EvidenceSet) -> PosteriorSet:
    """Oracle: build the full joint tensor and renormalize. Exponential; only
    for small networks and tests."""
    n = len(net.variables)
    sizes = [v.space.size for v in net.variables]
    joint = np.ones(sizes)
    for cpt in net.cpts:
        family = [p.index for p in cpt.parents] + [cpt.variable.index]
        t = np.asarray(cpt.rows, dtype=np.float64).reshape(
            [net.variables[i].space.size for i in family]
        )
        perm = sorted(range(len(family)), key=lambda k: family[k])
        t = np.transpose(t, perm)
        shape = [1] * n
        for i in family:
            shape[i] = sizes[i]
        joint = joint * t.reshape(shape)

    for i, ordinal in _observed_ordinals(net, evidence).items():
        mask = np.zeros(sizes[i])
        mask[ordinal] = 1.0
        shape = [1] * n
        shape[i] = sizes[i]
        joint = joint * mask.reshape(shape)

    z = joint.sum()
    if z <= 0.0:
        raise ImpossibleEvidenceError("evidence has probability 0 under the model")
    posteriors = []
    for i, var in enumerate(net.variables):
        axes = tuple(a for a in range(n) if a != i)
        masses = joint.sum(axis=axes) / z
        posteriors.append(Distribution(var.space, tuple(masses)))
    return PosteriorSet(evidence, tuple(posteriors))
