import pytest

from bndiff.model import EventSpace, SpaceKind, build_network


BOOL = EventSpace("bool", SpaceKind.CATEGORICAL, ("True", "False"))


@pytest.fixture
def two_var_net():
    """A -> B with P(A=t)=0.3, P(B=t|A=t)=0.9, P(B=t|A=f)=0.2."""
    return build_network(
        [BOOL],
        [("Alarm", "bool"), ("Bell", "bool")],
        {"Bell": ["Alarm"]},
        {
            "Alarm": [[0.3, 0.7]],
            "Bell": [[0.9, 0.1], [0.2, 0.8]],
        },
    )


@pytest.fixture
def chain3_net():
    """A -> B -> C with strictly positive, non-uniform CPTs."""
    return build_network(
        [BOOL],
        [("Alpha", "bool"), ("Beta", "bool"), ("Gamma", "bool")],
        {"Beta": ["Alpha"], "Gamma": ["Beta"]},
        {
            "Alpha": [[0.6, 0.4]],
            "Beta": [[0.7, 0.3], [0.25, 0.75]],
            "Gamma": [[0.55, 0.45], [0.1, 0.9]],
        },
    )


@pytest.fixture
def asia4_net():
    """Age/VisitAsia/Smoker/Cancer toy net with normalized CPTs."""
    age = EventSpace("age3", SpaceKind.ORDERED, ("Young", "Adult", "Aged"))
    return build_network(
        [BOOL, age],
        [
            ("Age", "age3"),
            ("VisitAsia", "bool"),
            ("Smoker", "bool"),
            ("Cancer", "bool"),
        ],
        {"Cancer": ["Age", "Smoker"]},
        {
            "Age": [[0.3, 0.5, 0.2]],
            "VisitAsia": [[0.01, 0.99]],
            "Smoker": [[0.25, 0.75]],
            "Cancer": [
                [0.01, 0.99],
                [0.05, 0.95],
                [0.02, 0.98],
                [0.10, 0.90],
                [0.04, 0.96],
                [0.20, 0.80],
            ],
        },
    )
