"""Inference diffs and symmetric-KL relevance ranking.

A diff pairs each variable's posterior under evidence set 1 with its
posterior under evidence set 2. Relevance is the symmetric Kullback-Leibler
divergence of the pair; variables sort descending by it, and the top-c%
eligible variables (plus all evidence variables, which are always shown)
form the relevant set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .inference import ImpossibleEvidenceError, posterior_all
from .model import (
    BayesianNetwork,
    Distribution,
    DomainError,
    EvidenceSet,
    Variable,
)

# Floor applied to the second distribution's masses before the log ratio, so
# hand-authored CPTs containing zeros still get finite relevance scores.
KL_FLOOR = 1e-12


@dataclass(frozen=True)
class InferenceDiff:
    """Per-variable (P(X|E1), P(X|E2)) pairs, aligned with net.variables."""

    net: BayesianNetwork
    e1: EvidenceSet
    e2: EvidenceSet
    pairs: tuple[tuple[Distribution, Distribution], ...]


@dataclass(frozen=True)
class RankingEntry:
    variable: Variable
    score: float


@dataclass(frozen=True)
class RelevanceRanking:
    """Eligible variables sorted by descending relevance.

    Variables observed in either evidence set do not compete for ranking
    slots; they are carried separately and are always displayed.
    """

    entries: tuple[RankingEntry, ...]
    eligible_count: int
    evidence_variables: tuple[Variable, ...]


@dataclass(frozen=True)
class FilterConfig:
    threshold_percent: float

    def __post_init__(self):
        if not 0.0 <= self.threshold_percent <= 100.0:
            raise ValueError(
                f"threshold must be in [0, 100], got {self.threshold_percent!r}"
            )


def inference_diff(
    net: BayesianNetwork, e1: EvidenceSet, e2: EvidenceSet
) -> InferenceDiff:
    """Posteriors for every variable under both evidence sets."""
    sets = []
    for label, ev in ((1, e1), (2, e2)):
        try:
            sets.append(posterior_all(net, ev))
        except ImpossibleEvidenceError as exc:
            raise ImpossibleEvidenceError(
                f"evidence set {label} has probability 0 under the model",
                which_set=label,
            ) from exc
    pairs = tuple(zip(sets[0].posteriors, sets[1].posteriors))
    return InferenceDiff(net, e1, e2, pairs)


def kl(p: Distribution, q: Distribution) -> float:
    """Kullback-Leibler divergence D(p || q) over a shared event space.

    Zero-mass terms of p contribute nothing; masses of q are floored at
    KL_FLOOR so the result stays finite.
    """
    if p.space != q.space:
        raise DomainError(
            f"KL divergence needs a shared event space "
            f"({p.space.id!r} vs {q.space.id!r})"
        )
    total = 0.0
    for pi, qi in zip(p.masses, q.masses):
        if pi == 0.0:
            continue
        total += pi * math.log(pi / max(qi, KL_FLOOR))
    return total


def relevance(pair: tuple[Distribution, Distribution]) -> float:
    """Symmetric KL divergence of a diff pair."""
    p, q = pair
    return kl(p, q) + kl(q, p)


def rank(diff: InferenceDiff) -> RelevanceRanking:
    """Eligible variables scored and sorted descending, ties by index."""
    observed = set(diff.e1.observed_indices()) | set(diff.e2.observed_indices())
    entries = []
    for var, pair in zip(diff.net.variables, diff.pairs):
        if var.index in observed:
            continue
        entries.append(RankingEntry(var, relevance(pair)))
    entries.sort(key=lambda e: (-e.score, e.variable.index))
    evidence_vars = tuple(
        v for v in diff.net.variables if v.index in observed
    )
    return RelevanceRanking(tuple(entries), len(entries), evidence_vars)


def filter_top(ranking: RelevanceRanking, config: FilterConfig) -> tuple[Variable, ...]:
    """The relevant set: top floor(c% of eligible) variables plus all
    evidence variables, in ranking order then variable order."""
    k = math.floor(config.threshold_percent / 100.0 * ranking.eligible_count)
    kept = [entry.variable for entry in ranking.entries[:k]]
    kept.extend(ranking.evidence_variables)
    return tuple(kept)


def diff_report(
    diff: InferenceDiff,
    ranking: RelevanceRanking | None = None,
    config: FilterConfig | None = None,
) -> dict:
    """Structured diff report; ranking/retained/threshold included when given."""
    report = {
        "e1": diff.e1.to_mapping(diff.net),
        "e2": diff.e2.to_mapping(diff.net),
        "perVariable": [
            {
                "name": var.name,
                "p1": list(p1.masses),
                "p2": list(p2.masses),
                "relevance": relevance((p1, p2)),
            }
            for var, (p1, p2) in zip(diff.net.variables, diff.pairs)
        ],
    }
    if ranking is not None:
        report["ranking"] = [e.variable.name for e in ranking.entries]
    if ranking is not None and config is not None:
        report["retained"] = [v.name for v in filter_top(ranking, config)]
        report["threshold"] = config.threshold_percent
    return report
