"""Network file format: a single UTF-8 JSON document, canonical field order.

Top level::

    {
      "version": 1,
      "spaces": [{"id": ..., "kind": "categorical"|"ordered", "values": [...]}],
      "variables": [{"name": ..., "space": ...}],
      "edges": [["parentName", "childName"], ...],
      "cpts": {"variableName": {"parents": [...], "rows": [[...], ...]}}
    }

A document that parses is guaranteed to validate cleanly; anything else
raises ``NetworkFormatError``. ``serialize_network(parse_network(doc)) ==
doc`` for canonical documents.
"""

from __future__ import annotations

import json

from .model import (
    BayesianNetwork,
    EventSpace,
    ModelError,
    SpaceKind,
    build_network,
    validate_network,
)

FORMAT_VERSION = 1


class NetworkFormatError(Exception):
    """Document cannot be turned into a valid network."""


def network_to_document(net: BayesianNetwork) -> dict:
    """Plain-dict form of a network, in canonical field and element order."""
    spaces = []
    seen = set()
    for var in net.variables:
        if var.space.id not in seen:
            seen.add(var.space.id)
            spaces.append(
                {
                    "id": var.space.id,
                    "kind": var.space.kind.value,
                    "values": list(var.space.values),
                }
            )
    return {
        "version": FORMAT_VERSION,
        "spaces": spaces,
        "variables": [{"name": v.name, "space": v.space.id} for v in net.variables],
        "edges": [[p, c] for p, c in net.edges()],
        "cpts": {
            cpt.variable.name: {
                "parents": [p.name for p in cpt.parents],
                "rows": [list(row) for row in cpt.rows],
            }
            for cpt in net.cpts
        },
    }


def serialize_network(net: BayesianNetwork) -> str:
    return json.dumps(network_to_document(net), indent=2) + "\n"


def network_from_document(doc) -> BayesianNetwork:
    if not isinstance(doc, dict):
        raise NetworkFormatError("document root must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise NetworkFormatError(f"unsupported format version {version!r}")

    try:
        spaces = [
            EventSpace(s["id"], SpaceKind(s["kind"]), tuple(s["values"]))
            for s in doc.get("spaces", [])
        ]
        variable_specs = [(v["name"], v["space"]) for v in doc.get("variables", [])]
        edges = [tuple(e) for e in doc.get("edges", [])]
        cpt_specs = doc.get("cpts", {})
    except (KeyError, TypeError, ValueError) as exc:
        raise NetworkFormatError(f"malformed document: {exc}") from exc

    names = [name for name, _ in variable_specs]
    name_set = set(names)
    for parent, child in edges:
        if parent not in name_set:
            raise NetworkFormatError(f"edge references unknown variable {parent!r}")
        if child not in name_set:
            raise NetworkFormatError(f"edge references unknown variable {child!r}")
    for name, entry in cpt_specs.items():
        if name not in name_set:
            raise NetworkFormatError(f"cpts entry for unknown variable {name!r}")
        for pname in entry.get("parents", []):
            if pname not in name_set:
                raise NetworkFormatError(
                    f"CPT of {name!r} references unknown parent {pname!r}"
                )
    for name in names:
        if name not in cpt_specs:
            raise NetworkFormatError(f"missing CPT for variable {name!r}")

    # Parent lists come from the cpts; the edge list must agree with them.
    parents = {name: list(cpt_specs[name].get("parents", [])) for name in names}
    declared = {(p, c) for p, c in edges}
    derived = {(p, c) for c, ps in parents.items() for p in ps}
    if declared != derived:
        missing = sorted(derived - declared)
        extra = sorted(declared - derived)
        raise NetworkFormatError(
            f"edges and CPT parents disagree (missing from edges: {missing}, "
            f"not backed by a CPT parent: {extra})"
        )

    rows = {name: cpt_specs[name].get("rows", []) for name in names}
    try:
        net = build_network(spaces, variable_specs, parents, rows)
    except ModelError as exc:
        raise NetworkFormatError(str(exc)) from exc

    violations = validate_network(net)
    if violations:
        summary = "; ".join(str(v) for v in violations[:5])
        raise NetworkFormatError(f"document violates network invariants: {summary}")
    return net


def parse_network(text: str) -> BayesianNetwork:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkFormatError(f"syntax error: {exc}") from exc
    return network_from_document(doc)
