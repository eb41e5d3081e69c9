import json

import pytest

from bndiff.netformat import (
    NetworkFormatError,
    network_to_document,
    parse_network,
    serialize_network,
)


def test_round_trip_is_structurally_identical(asia4_net):
    text = serialize_network(asia4_net)
    again = parse_network(text)
    assert again == asia4_net


def test_serialize_parse_serialize_is_byte_identity(asia4_net, chain3_net):
    for net in (asia4_net, chain3_net):
        text = serialize_network(net)
        assert serialize_network(parse_network(text)) == text


def test_canonical_field_order(asia4_net):
    doc = network_to_document(asia4_net)
    assert list(doc) == ["version", "spaces", "variables", "edges", "cpts"]
    assert doc["version"] == 1


def test_syntax_error(two_var_net):
    with pytest.raises(NetworkFormatError, match="syntax"):
        parse_network("{not json")


def test_missing_cpt_rows(two_var_net):
    doc = network_to_document(two_var_net)
    doc["cpts"]["Bell"]["rows"] = doc["cpts"]["Bell"]["rows"][:1]
    with pytest.raises(NetworkFormatError):
        parse_network(json.dumps(doc))


def test_extra_cpt_rows(two_var_net):
    doc = network_to_document(two_var_net)
    doc["cpts"]["Bell"]["rows"].append([0.5, 0.5])
    with pytest.raises(NetworkFormatError):
        parse_network(json.dumps(doc))


def test_unknown_parent_reference(two_var_net):
    doc = network_to_document(two_var_net)
    doc["cpts"]["Bell"]["parents"] = ["Quux"]
    with pytest.raises(NetworkFormatError, match="Quux"):
        parse_network(json.dumps(doc))


def test_duplicate_variable_name(two_var_net):
    doc = network_to_document(two_var_net)
    doc["variables"].append({"name": "Alarm", "space": "bool"})
    with pytest.raises(NetworkFormatError, match="duplicate"):
        parse_network(json.dumps(doc))


def test_edges_must_match_cpt_parents(two_var_net):
    doc = network_to_document(two_var_net)
    doc["edges"] = []
    with pytest.raises(NetworkFormatError, match="disagree"):
        parse_network(json.dumps(doc))


def test_unnormalized_document_rejected(two_var_net):
    doc = network_to_document(two_var_net)
    doc["cpts"]["Alarm"]["rows"] = [[0.5, 0.4]]
    with pytest.raises(NetworkFormatError, match="invariants"):
        parse_network(json.dumps(doc))


def test_unsupported_version(two_var_net):
    doc = network_to_document(two_var_net)
    doc["version"] = 99
    with pytest.raises(NetworkFormatError, match="version"):
        parse_network(json.dumps(doc))
