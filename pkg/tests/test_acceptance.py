"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or in
the captured output), so the suite doubles as a checklist.
"""

import itertools
import math
import time
import xml.etree.ElementTree as ET
from contextlib import contextmanager

import numpy as np
import pytest

from bndiff.inference import enumerate_posteriors, posterior_all
from bndiff.layout import (
    apply_relevance_styling,
    assign_layers,
    compute_layout,
    count_crossings,
    order_layers,
)
from bndiff.learning import Dataset, LearnConfig, family_score, hill_climb, learn_structure
from bndiff.model import (
    Distribution,
    EventSpace,
    EvidenceSet,
    SpaceKind,
    Variable,
    build_network,
)
from bndiff.relevance import (
    FilterConfig,
    RankingEntry,
    RelevanceRanking,
    filter_top,
    inference_diff,
    kl,
    rank,
    relevance,
)
from bndiff.scene import build_scene, pie_geometry
from bndiff.svg import render_svg
from bndiff.synth import random_dag, random_network, sample_codes

SVG_NS = "{http://www.w3.org/2000/svg}"


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}")
        raise
    print(f"PASS  {name}")


def test_oracle_equivalence():
    with criterion("oracle equivalence: 100 random networks vs enumeration <= 1e-9"):
        start = time.perf_counter()
        rng = np.random.default_rng(7777)
        worst = 0.0
        for _ in range(100):
            net = random_network(
                rng, int(rng.integers(2, 11)), max_values=4, max_indegree=3
            )
            observed = {}
            for var in net.variables:
                if rng.random() < 0.25:
                    observed[var.name] = var.space.values[
                        int(rng.integers(var.space.size))
                    ]
            ev = EvidenceSet.from_mapping(net, observed)
            fast = posterior_all(net, ev)
            oracle = enumerate_posteriors(net, ev)
            for a, b in zip(fast.posteriors, oracle.posteriors):
                err = float(np.max(np.abs(np.array(a.masses) - np.array(b.masses))))
                worst = max(worst, err)
        elapsed = time.perf_counter() - start
        assert worst <= 1e-9, f"max abs error {worst}"
        assert elapsed < 30.0, f"took {elapsed:.1f}s"


def test_kl_fixtures():
    with criterion("KL fixtures: hand values, kl(p,p)=0 exactly, exact symmetry"):
        bool_space = EventSpace("b", SpaceKind.CATEGORICAL, ("t", "f"))
        p = Distribution(bool_space, (0.5, 0.5))
        q = Distribution(bool_space, (0.75, 0.25))
        assert kl(p, q) == pytest.approx(0.1438410, abs=1e-6)
        assert relevance((p, q)) == pytest.approx(0.2746531, abs=1e-6)

        rng = np.random.default_rng(1234)
        spaces = [
            EventSpace(f"s{k}", SpaceKind.CATEGORICAL, tuple(f"v{i}" for i in range(k)))
            for k in (2, 3, 4, 6)
        ]
        for _ in range(1000):
            space = spaces[int(rng.integers(len(spaces)))]
            a = Distribution(space, tuple(rng.dirichlet(np.ones(space.size))))
            b = Distribution(space, tuple(rng.dirichlet(np.ones(space.size))))
            assert kl(a, a) == 0.0
            assert relevance((a, b)) == relevance((b, a))


def test_diff_baseline():
    with criterion("diff baseline: e1 = e2 gives zero relevance, equal pairs"):
        rng = np.random.default_rng(2024)
        for _ in range(10):
            net = random_network(rng, int(rng.integers(3, 9)))
            observed = {}
            for var in net.variables:
                if rng.random() < 0.3:
                    observed[var.name] = var.space.values[
                        int(rng.integers(var.space.size))
                    ]
            ev = EvidenceSet.from_mapping(net, observed)
            diff = inference_diff(net, ev, ev)
            for p1, p2 in diff.pairs:
                assert p1.masses == p2.masses
                assert relevance((p1, p2)) <= 1e-12
            for entry in rank(diff).entries:
                assert entry.score <= 1e-12


def _synthetic_ranking(n_eligible):
    space = EventSpace("b", SpaceKind.CATEGORICAL, ("t", "f"))
    entries = tuple(
        RankingEntry(Variable(i, f"N{i + 1}", f"N{i + 1}", space), float(n_eligible - i))
        for i in range(n_eligible)
    )
    return RelevanceRanking(entries, n_eligible, ())


def test_filter_laws():
    with criterion("filter laws: floor counts and monotone nesting"):
        for size in (10, 31, 66):
            ranking = _synthetic_ranking(size)
            previous = set()
            for c in range(0, 101, 5):
                kept = filter_top(ranking, FilterConfig(float(c)))
                assert len(kept) == math.floor(c / 100.0 * size)
                names = {v.name for v in kept}
                assert previous <= names
                previous = names


def test_learning_pipeline():
    with criterion("learning: chain skeleton, increasing scores, score fixture"):
        bool_space = EventSpace("b", SpaceKind.CATEGORICAL, ("t", "f"))
        truth = build_network(
            [bool_space],
            [("A", "b"), ("B", "b"), ("C", "b")],
            {"B": ["A"], "C": ["B"]},
            {
                "A": [[0.5, 0.5]],
                "B": [[0.9, 0.1], [0.1, 0.9]],
                "C": [[0.9, 0.1], [0.1, 0.9]],
            },
        )
        rng = np.random.default_rng(424242)
        codes = sample_codes(truth, 5000, rng)
        data = Dataset(("A", "B", "C"), (bool_space,) * 3, codes)
        result = hill_climb(data, LearnConfig(max_indegree=2))
        skeleton = {
            frozenset((p, c)) for c, ps in result.parents.items() for p in ps
        }
        assert skeleton == {frozenset(("A", "B")), frozenset(("B", "C"))}
        scores = result.accepted_scores
        assert all(b > a for a, b in zip(scores, scores[1:]))

        fixture = Dataset(
            ("X",), (bool_space,), np.array([[0], [0], [0], [1]], dtype=np.int64)
        )
        assert family_score("X", [], fixture, alpha=1.0) == pytest.approx(
            math.log(0.05), abs=1e-9
        )


def test_layout_laws():
    with criterion("layout: downward edges, no crossing regressions, stable order"):
        rng = np.random.default_rng(909)
        for _ in range(200):
            nodes, edges = random_dag(rng, int(rng.integers(2, 16)), edge_prob=0.35)
            layers = assign_layers(nodes, edges)
            for p, c in edges:
                assert layers[p] < layers[c]
            unit_edges = [(p, c) for p, c in edges if layers[c] - layers[p] == 1]
            initial = {}
            rows = {}
            for n in nodes:
                rows.setdefault(layers[n], []).append(n)
            for row in rows.values():
                for i, n in enumerate(row):
                    initial[n] = i
            before = count_crossings(unit_edges, layers, initial)
            after = count_crossings(
                unit_edges, layers, order_layers(layers, unit_edges)
            )
            assert after <= before

        net = random_network(np.random.default_rng(31), 14, max_indegree=3)
        layout = compute_layout(net)
        names = list(net.names)
        for k1, k2 in itertools.combinations(range(0, 15, 3), 2):
            common = set(names[: min(k1, k2)])
            s1 = apply_relevance_styling(layout, set(names[:k1]) or set(), set())
            s2 = apply_relevance_styling(layout, set(names[:k2]) or set(), set())
            for layer_id in set(layout.layer.values()):
                row = [
                    n
                    for n in layout.nodes
                    if layout.layer[n] == layer_id and n in common
                ]
                assert sorted(row, key=lambda n: s1.order[n]) == sorted(
                    row, key=lambda n: s2.order[n]
                )


def test_desk_scale_pipeline():
    with criterion(
        "desk-scale pipeline: 67 variables, learn + diff + 20% filter + SVG"
    ):
        start = time.perf_counter()
        rng = np.random.default_rng(20240901)
        truth = random_network(rng, 67, max_values=4, max_indegree=3)
        codes = sample_codes(truth, 10_000, rng)
        data = Dataset(
            tuple(truth.names), tuple(v.space for v in truth.variables), codes
        )
        net = learn_structure(data, LearnConfig(max_indegree=3))
        assert all(len(net.parents_of(name)) <= 3 for name in net.names)

        degree: dict[str, int] = {}
        for p, c in net.edges():
            degree[p] = degree.get(p, 0) + 1
            degree[c] = degree.get(c, 0) + 1
        target = max(net.names, key=lambda n: (degree.get(n, 0), n))
        e1 = EvidenceSet.empty(net)
        e2 = EvidenceSet.from_mapping(
            net, {target: net.variable(target).space.values[0]}
        )

        diff = inference_diff(net, e1, e2)
        ranking = rank(diff)
        assert ranking.eligible_count == 66
        config = FilterConfig(20.0)
        kept = filter_top(ranking, config)
        assert len(kept) == 13 + 1  # floor(0.2 * 66) plus the evidence node

        scene = build_scene(net, diff, ranking, config, compute_layout(net))
        svg = render_svg(scene)
        root = ET.fromstring(svg)
        full = [
            g
            for g in root.iter(f"{SVG_NS}g")
            if "glyph-full" in (g.get("class") or "")
        ]
        assert len(full) == 14
        assert {g.get("data-name") for g in full} == {v.name for v in kept}
        elapsed = time.perf_counter() - start
        assert elapsed < 300.0, f"took {elapsed:.1f}s"


def test_glyph_geometry():
    with criterion("glyph geometry: masses recoverable, anchored, order fixed"):
        rng = np.random.default_rng(55555)
        spaces = [
            EventSpace(f"s{k}", SpaceKind.CATEGORICAL, tuple(f"v{i}" for i in range(k)))
            for k in (2, 3, 4, 5, 6)
        ]
        for _ in range(1000):
            space = spaces[int(rng.integers(len(spaces)))]
            masses = tuple(rng.dirichlet(np.ones(space.size)))
            colors = tuple("#000000" for _ in range(space.size))
            slices = pie_geometry(Distribution(space, masses), colors)
            assert slices[0].start_angle == 0.0  # 12 o'clock anchor
            assert [s.value for s in slices] == list(space.values)
            rebuilt = np.array([s.sweep_angle for s in slices]) / 360.0
            assert np.max(np.abs(rebuilt - np.array(masses))) <= 1e-6
            starts = [s.start_angle for s in slices]
            assert starts == sorted(starts)  # cumulative, clockwise
