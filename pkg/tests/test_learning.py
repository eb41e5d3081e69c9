import math

import numpy as np
import pytest

from bndiff.learning import (
    Dataset,
    LearnConfig,
    dataset_from_rows,
    estimate_cpts,
    family_score,
    hill_climb,
    learn_structure,
    read_csv,
    subsample,
)
from bndiff.model import EventSpace, ModelError, SpaceKind, build_network
from bndiff.synth import sample_rows

BOOL = EventSpace("bool", SpaceKind.CATEGORICAL, ("t", "f"))


def _bool_data(column, cells):
    return dataset_from_rows([column], [BOOL], [[c] for c in cells])


def _chain_net(p_root=0.5, hi=0.9, lo=0.1):
    return build_network(
        [BOOL],
        [("A", "bool"), ("B", "bool"), ("C", "bool")],
        {"B": ["A"], "C": ["B"]},
        {
            "A": [[p_root, 1 - p_root]],
            "B": [[hi, 1 - hi], [lo, 1 - lo]],
            "C": [[hi, 1 - hi], [lo, 1 - lo]],
        },
    )


class TestEstimateCpts:
    def test_laplace_smoothing_rootless(self):
        data = _bool_data("X", ["t", "t", "t", "f"])
        net = estimate_cpts(data, {}, alpha=1.0)
        assert net.cpt("X").rows[0] == pytest.approx((4 / 6, 2 / 6), abs=1e-12)

    def test_empty_dataset_gives_uniform_rows(self):
        data = Dataset(("X",), (BOOL,), np.zeros((0, 1), dtype=np.int64))
        net = estimate_cpts(data, {}, alpha=1.0)
        assert net.cpt("X").rows[0] == (0.5, 0.5)

    def test_child_row_with_zero_count(self):
        rows = [["t", "f"]] * 5  # under parent=t the child is always f
        data = dataset_from_rows(["P", "C"], [BOOL, BOOL], rows)
        net = estimate_cpts(data, {"C": ["P"]}, alpha=1.0)
        assert net.cpt("C").rows[0] == pytest.approx((1 / 7, 6 / 7), abs=1e-12)

    def test_rows_strictly_positive_and_normalized(self):
        rng = np.random.default_rng(2)
        net0 = _chain_net()
        rows = sample_rows(net0, 200, rng)
        data = dataset_from_rows(["A", "B", "C"], [BOOL] * 3, rows)
        net = estimate_cpts(data, {"B": ["A"], "C": ["A", "B"]}, alpha=1.0)
        for cpt in net.cpts:
            for row in cpt.rows:
                assert min(row) > 0
                assert abs(sum(row) - 1.0) <= 1e-9


class TestFamilyScore:
    def test_closed_form_fixture(self):
        data = _bool_data("X", ["t", "t", "t", "f"])
        score = family_score("X", [], data, alpha=1.0)
        assert score == pytest.approx(math.log(0.05), abs=1e-9)

    def test_empty_dataset_scores_zero(self):
        data = Dataset(("X",), (BOOL,), np.zeros((0, 1), dtype=np.int64))
        assert family_score("X", [], data, alpha=1.0) == 0.0

    def test_decomposability_total_order_invariant(self):
        rng = np.random.default_rng(9)
        net0 = _chain_net()
        rows = sample_rows(net0, 300, rng)
        data = dataset_from_rows(["A", "B", "C"], [BOOL] * 3, rows)
        parents = {"A": [], "B": ["A"], "C": ["B"]}
        forward = sum(family_score(v, parents[v], data) for v in ("A", "B", "C"))
        backward = sum(family_score(v, parents[v], data) for v in ("C", "B", "A"))
        assert forward == pytest.approx(backward, abs=1e-9)


class TestHillClimb:
    def test_independent_columns_stay_unconnected(self):
        rng = np.random.default_rng(41)
        codes = rng.integers(0, 2, size=(1000, 2))
        data = Dataset(("A", "B"), (BOOL, BOOL), codes)
        result = hill_climb(data, LearnConfig(max_indegree=2))
        assert result.parents == {"A": [], "B": []}

    def test_strongly_coupled_pair_gets_one_edge(self):
        rng = np.random.default_rng(42)
        a = rng.integers(0, 2, size=1000)
        flip = rng.random(1000) < 0.05
        b = np.where(flip, 1 - a, a)
        data = Dataset(("A", "B"), (BOOL, BOOL), np.stack([a, b], axis=1))
        result = hill_climb(data, LearnConfig(max_indegree=2))
        edges = [(p, c) for c, ps in result.parents.items() for p in ps]
        assert len(edges) == 1
        assert set(edges[0]) == {"A", "B"}

    def test_chain_skeleton_recovered(self):
        rng = np.random.default_rng(20240501)
        rows = sample_rows(_chain_net(), 5000, rng)
        data = dataset_from_rows(["A", "B", "C"], [BOOL] * 3, rows)
        result = hill_climb(data, LearnConfig(max_indegree=2))
        skeleton = {
            frozenset((p, c)) for c, ps in result.parents.items() for p in ps
        }
        assert skeleton == {frozenset(("A", "B")), frozenset(("B", "C"))}

    def test_accepted_scores_strictly_increase(self):
        rng = np.random.default_rng(7)
        rows = sample_rows(_chain_net(), 2000, rng)
        data = dataset_from_rows(["A", "B", "C"], [BOOL] * 3, rows)
        result = hill_climb(data, LearnConfig(max_indegree=2))
        scores = result.accepted_scores
        assert len(scores) >= 1
        assert all(b > a for a, b in zip(scores, scores[1:]))

    def test_indegree_cap_respected(self):
        rng = np.random.default_rng(13)
        from bndiff.synth import random_network

        truth = random_network(rng, 8, max_values=2, max_indegree=4)
        rows = sample_rows(truth, 1500, rng)
        data = dataset_from_rows(
            [v.name for v in truth.variables],
            [v.space for v in truth.variables],
            rows,
        )
        for cap in (1, 2):
            result = hill_climb(data, LearnConfig(max_indegree=cap))
            assert all(len(ps) <= cap for ps in result.parents.values())

    def test_learn_structure_returns_valid_network(self):
        rng = np.random.default_rng(77)
        rows = sample_rows(_chain_net(), 800, rng)
        data = dataset_from_rows(["A", "B", "C"], [BOOL] * 3, rows)
        net = learn_structure(data, LearnConfig(max_indegree=2))
        from bndiff.model import validate_network

        assert validate_network(net) == []

    def test_empty_dataset_rejected(self):
        data = Dataset(("X",), (BOOL,), np.zeros((0, 1), dtype=np.int64))
        with pytest.raises(ModelError):
            learn_structure(data, LearnConfig())

    def test_deterministic(self):
        rng = np.random.default_rng(99)
        rows = sample_rows(_chain_net(), 1000, rng)
        data = dataset_from_rows(["A", "B", "C"], [BOOL] * 3, rows)
        r1 = hill_climb(data, LearnConfig(max_indegree=2))
        r2 = hill_climb(data, LearnConfig(max_indegree=2))
        assert r1.parents == r2.parents
        assert r1.total_score == r2.total_score


class TestCsv:
    def test_read_with_inferred_spaces(self):
        data = read_csv("color,size\nred,small\nblue,big\nred,big\n")
        assert data.columns == ("color", "size")
        assert data.spaces[0].values == ("red", "blue")  # first-appearance order
        assert data.spaces[1].values == ("small", "big")
        assert data.n_rows == 3

    def test_read_with_declared_spaces(self):
        space = EventSpace("color", SpaceKind.CATEGORICAL, ("blue", "red"))
        data = read_csv("color\nred\nblue\n", spaces={"color": space})
        assert data.spaces[0].values == ("blue", "red")
        assert data.codes[:, 0].tolist() == [1, 0]

    def test_out_of_space_value_rejected(self):
        space = EventSpace("color", SpaceKind.CATEGORICAL, ("blue", "red"))
        with pytest.raises(ModelError, match="green"):
            read_csv("color\ngreen\n", spaces={"color": space})

    def test_missing_cell_rejected(self):
        with pytest.raises(ModelError):
            read_csv("a,b\n1,\n")

    def test_subsample_deterministic(self):
        data = read_csv("x\n" + "\n".join(str(i % 3) for i in range(100)) + "\n")
        s1 = subsample(data, 10, seed=5)
        s2 = subsample(data, 10, seed=5)
        assert s1.n_rows == 10
        assert (s1.codes == s2.codes).all()
