"""Inference-diff workbench for discrete Bayesian networks."""

from .inference import ImpossibleEvidenceError, posterior, posterior_all
from .learning import LearnConfig, estimate_cpts, learn_structure, read_csv
from .model import (
    CPT,
    BayesianNetwork,
    Distribution,
    EventSpace,
    EvidenceSet,
    SpaceKind,
    Variable,
    abbreviate,
    build_network,
    validate_network,
)
from .netformat import parse_network, serialize_network
from .relevance import FilterConfig, filter_top, inference_diff, kl, rank, relevance

__version__ = "0.1.0"

__all__ = [
    "BayesianNetwork",
    "CPT",
    "Distribution",
    "EventSpace",
    "EvidenceSet",
    "FilterConfig",
    "ImpossibleEvidenceError",
    "LearnConfig",
    "SpaceKind",
    "Variable",
    "abbreviate",
    "build_network",
    "estimate_cpts",
    "filter_top",
    "inference_diff",
    "kl",
    "learn_structure",
    "parse_network",
    "posterior",
    "posterior_all",
    "rank",
    "read_csv",
    "relevance",
    "serialize_network",
    "validate_network",
    "__version__",
]
