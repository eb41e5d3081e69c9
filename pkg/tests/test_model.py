import math
import random

import pytest

from bndiff.model import (
    CPT,
    DomainError,
    EventSpace,
    EvidenceSet,
    InvalidNameError,
    ModelError,
    SpaceKind,
    Variable,
    abbreviate,
    build_network,
    point_mass,
    row_count,
    row_index,
    row_values,
    validate_network,
)


def _var(index, name, space):
    return Variable(index, name, name[0].upper(), space)


class TestAbbreviate:
    def test_unique_first_letters(self):
        assert abbreviate(["Age", "VisitAsia", "Smoker", "Cancer"]) == [
            "A",
            "V",
            "S",
            "C",
        ]

    def test_shared_letter_gets_sequential_suffix(self):
        assert abbreviate(["Tuberculosis", "TbOrCancer"]) == ["T1", "T2"]

    def test_single_name_no_suffix(self):
        assert abbreviate(["Xray"]) == ["X"]

    def test_lowercase_first_letter_uppercased(self):
        assert abbreviate(["age", "bmi"]) == ["A", "B"]

    def test_suffixes_follow_input_order(self):
        names = ["Tea", "Toast", "Tar", "Ash"]
        assert abbreviate(names) == ["T1", "T2", "T3", "A"]
        swapped = ["Toast", "Tea", "Tar", "Ash"]
        assert abbreviate(swapped) == ["T1", "T2", "T3", "A"]

    @pytest.mark.parametrize("bad", ["", "4wheel", "_x", "Ω"])
    def test_rejects_unabbreviatable_names(self, bad):
        with pytest.raises(InvalidNameError):
            abbreviate([bad, "Good"])


class TestRowIndex:
    def setup_method(self):
        self.s3 = EventSpace("s3", SpaceKind.CATEGORICAL, ("a", "b", "c"))
        self.s2 = EventSpace("s2", SpaceKind.CATEGORICAL, ("x", "y"))

    def test_no_parents_is_zero(self):
        assert row_index([], []) == 0
        assert row_count([]) == 1

    def test_last_parent_varies_fastest(self):
        parents = [_var(0, "P", self.s2), _var(1, "Q", self.s2)]
        assert row_index(["x", "y"], parents) == 1
        assert row_index(["y", "x"], parents) == 2

    def test_mixed_radix_example(self):
        parents = [_var(0, "P", self.s3), _var(1, "Q", self.s2)]
        # Canonical enumeration of all 6 permutations, last parent fastest.
        expected = [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y"), ("c", "x"), ("c", "y")]
        for i, values in enumerate(expected):
            assert row_index(values, parents) == i
        assert row_index(["c", "y"], parents) == 5

    def test_bijection_decode_then_encode(self):
        rng = random.Random(7)
        spaces = [
            EventSpace(f"s{k}", SpaceKind.CATEGORICAL, tuple(f"v{j}" for j in range(k)))
            for k in (2, 3, 4, 5)
        ]
        for _ in range(25):
            parents = [
                _var(i, f"P{i}", rng.choice(spaces)) for i in range(rng.randint(1, 4))
            ]
            total = row_count(parents)
            seen = set()
            for idx in range(total):
                values = row_values(idx, parents)
                assert row_index(values, parents) == idx
                seen.add(values)
            assert len(seen) == total

    def test_value_not_in_space_raises(self):
        parents = [_var(0, "P", self.s2)]
        with pytest.raises(DomainError):
            row_index(["nope"], parents)


class TestValidateNetwork:
    def test_well_formed_net_has_empty_report(self, asia4_net):
        assert validate_network(asia4_net) == []

    def test_unnormalized_row_named_in_report(self):
        bool_space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        net = build_network(
            [bool_space],
            [("Alarm", "bool")],
            {},
            {"Alarm": [[0.5, 0.4]]},
        )
        report = validate_network(net)
        assert len(report) == 1
        assert report[0].kind == "cpt-normalization"
        assert report[0].subject == "Alarm[0]"

    def test_two_cycle_reported(self):
        bool_space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        net = build_network(
            [bool_space],
            [("Alarm", "bool"), ("Bell", "bool")],
            {"Alarm": ["Bell"], "Bell": ["Alarm"]},
            {
                "Alarm": [[0.5, 0.5], [0.5, 0.5]],
                "Bell": [[0.5, 0.5], [0.5, 0.5]],
            },
        )
        kinds = {v.kind for v in validate_network(net)}
        assert "cycle" in kinds

    def test_missing_rows_reported(self):
        bool_space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        net = build_network(
            [bool_space],
            [("Alarm", "bool"), ("Bell", "bool"), ("Cat", "bool")],
            {"Cat": ["Alarm", "Bell"]},
            {
                "Alarm": [[0.5, 0.5]],
                "Bell": [[0.5, 0.5]],
                "Cat": [[0.5, 0.5]] * 3,  # needs 4
            },
        )
        report = validate_network(net)
        assert any(v.kind == "cpt-shape" and v.subject == "Cat" for v in report)

    def test_negative_entry_reported(self):
        bool_space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        net = build_network(
            [bool_space],
            [("Alarm", "bool")],
            {},
            {"Alarm": [[1.2, -0.2]]},
        )
        kinds = {v.kind for v in validate_network(net)}
        assert "cpt-entry" in kinds

    def test_topological_sort_exists_iff_no_cycle(self, asia4_net):
        assert [v.name for v in asia4_net.topological_order()]  # no raise


class TestBuildNetwork:
    def test_unknown_parent_rejected(self):
        bool_space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        with pytest.raises(ModelError, match="unknown parent"):
            build_network(
                [bool_space],
                [("Alarm", "bool")],
                {"Alarm": ["Quux"]},
                {"Alarm": [[0.5, 0.5]]},
            )

    def test_duplicate_variable_rejected(self):
        bool_space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        with pytest.raises(ModelError, match="duplicate"):
            build_network(
                [bool_space],
                [("Alarm", "bool"), ("Alarm", "bool")],
                {},
                {"Alarm": [[0.5, 0.5]]},
            )

    def test_unknown_space_rejected(self):
        with pytest.raises(ModelError, match="unknown space"):
            build_network([], [("Alarm", "bool")], {}, {"Alarm": [[0.5, 0.5]]})


class TestEvidenceSet:
    def test_from_mapping_and_back(self, asia4_net):
        ev = EvidenceSet.from_mapping(asia4_net, {"Smoker": "True"})
        assert ev.to_mapping(asia4_net) == {"Smoker": "True"}
        assert not ev.is_empty
        assert ev.observed_indices() == [2]

    def test_question_mark_means_unobserved(self, asia4_net):
        ev = EvidenceSet.from_mapping(asia4_net, {"Smoker": "?"})
        assert ev.is_empty

    def test_out_of_domain_value_rejected(self, asia4_net):
        with pytest.raises(DomainError, match="Ancient"):
            EvidenceSet.from_mapping(asia4_net, {"Age": "Ancient"})

    def test_unknown_variable_rejected(self, asia4_net):
        with pytest.raises(DomainError, match="Nope"):
            EvidenceSet.from_mapping(asia4_net, {"Nope": "True"})


class TestDistribution:
    def test_point_mass(self):
        space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        dist = point_mass(space, "False")
        assert dist.masses == (0.0, 1.0)
        assert dist.mass("False") == 1.0

    def test_rejects_unnormalized(self):
        space = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))
        with pytest.raises(ModelError):
            from bndiff.model import Distribution

            Distribution(space, (0.5, 0.4))


class TestEventSpace:
    def test_rejects_empty(self):
        with pytest.raises(ModelError):
            EventSpace("empty", SpaceKind.CATEGORICAL, ())

    def test_rejects_duplicate_values(self):
        with pytest.raises(ModelError):
            EventSpace("dup", SpaceKind.CATEGORICAL, ("a", "a"))

    def test_index_of(self):
        space = EventSpace("s", SpaceKind.ORDERED, ("low", "mid", "high"))
        assert space.index_of("mid") == 1
        with pytest.raises(DomainError):
            space.index_of("extreme")
