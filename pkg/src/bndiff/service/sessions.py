"""In-memory session store: network, two evidence sets, threshold, caches.

Cached posteriors/diffs are keyed by the evidence pair, so any change to an
evidence set naturally misses the cache; the network is fixed for the
lifetime of a session. Per-session writes are serialized by a lock.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from ..layout import LayeredLayout, compute_layout
from ..model import BayesianNetwork, EvidenceSet
from ..relevance import (
    FilterConfig,
    InferenceDiff,
    RelevanceRanking,
    inference_diff,
    rank,
)

DEFAULT_THRESHOLD = 100.0


@dataclass
class Session:
    id: str
    network: BayesianNetwork
    e1: EvidenceSet
    e2: EvidenceSet
    threshold: float = DEFAULT_THRESHOLD
    cache_enabled: bool = True
    lock: threading.Lock = field(default_factory=threading.Lock)
    _layout: LayeredLayout | None = None
    _diff_cache: dict = field(default_factory=dict)

    @property
    def filter_config(self) -> FilterConfig:
        return FilterConfig(self.threshold)

    def layout(self) -> LayeredLayout:
        if self._layout is None:
            self._layout = compute_layout(self.network)
        return self._layout

    def diff_and_ranking(
        self, e1: EvidenceSet | None = None, e2: EvidenceSet | None = None
    ) -> tuple[InferenceDiff, RelevanceRanking]:
        """Diff + ranking for the given (default: current) evidence pair."""
        e1 = self.e1 if e1 is None else e1
        e2 = self.e2 if e2 is None else e2
        key = (e1.slots, e2.slots)
        if self.cache_enabled and key in self._diff_cache:
            return self._diff_cache[key]
        diff = inference_diff(self.network, e1, e2)
        ranking = rank(diff)
        if self.cache_enabled:
            self._diff_cache[key] = (diff, ranking)
        return diff, ranking


class SessionStore:
    def __init__(self, cache_enabled: bool = True):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.RLock()
        self._cache_enabled = cache_enabled

    def create(self, network: BayesianNetwork) -> Session:
        session = Session(
            id=uuid.uuid4().hex,
            network=network,
            e1=EvidenceSet.empty(network),
            e2=EvidenceSet.empty(network),
            cache_enabled=self._cache_enabled,
        )
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            return self._sessions.get(session_id)
