import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bihom3 import catalog
from bihom3.documents import (
    DocumentError,
    algebra_from_json,
    algebra_to_json,
    dumps,
    load_algebra,
    load_document,
    operator_from_json,
    operator_to_json,
    pair_from_json,
    pair_to_json,
)
from bihom3.scalars import Field

from helpers import random_algebra


def _base_doc():
    return algebra_to_json(catalog.example_3_18())


@pytest.mark.parametrize("name", catalog.FIXTURE_NAMES)
def test_shipped_fixtures_match_builders(name):
    A = catalog.load_fixture(name)
    assert A.same_structure(catalog.BUILDERS[name]())
    assert A.notes == catalog.BUILDERS[name]().notes


@pytest.mark.parametrize("name", catalog.FIXTURE_NAMES)
def test_fixture_roundtrip_is_identical(name):
    with catalog.fixture_path(name).open() as fh:
        text = fh.read()
    doc = json.loads(text)
    again = algebra_to_json(algebra_from_json(doc))
    assert again == doc
    assert dumps(again) == text


@given(st.integers(0, 5000))
@settings(max_examples=20, deadline=None)
def test_random_algebra_roundtrip(seed):
    A = random_algebra(seed)
    doc = algebra_to_json(A)
    assert algebra_to_json(algebra_from_json(json.loads(dumps(doc)))) == doc


def test_complex_field_roundtrip():
    from bihom3.complex_structures import complexify

    C = complexify(catalog.example_4_22()).complexified
    doc = algebra_to_json(C)
    assert doc["field"] == "Q(i)"
    B = algebra_from_json(doc)
    assert B.field is Field.GAUSSIAN and B.same_structure(C)


@pytest.mark.parametrize(
    "mutate, location",
    [
        (lambda d: d.update(alpha=[["1", "0"], ["0", "1"]]), "$.alpha"),
        (lambda d: d["brackets"][0].update(args=[0, 1, 7]), "$.brackets[0].args"),
        (lambda d: d["brackets"][0]["value"].update({"1": "1/0"}), "$.brackets[0].value.1"),
        (lambda d: d["brackets"][0]["value"].update({"9": "1"}), "$.brackets[0].value.9"),
        (lambda d: d["brackets"][0]["value"].update({"1": "2*i"}), "$.brackets[0].value.1"),
        (lambda d: d["brackets"].append(dict(d["brackets"][0])), "$.brackets[6].args"),
        (lambda d: d.pop("beta"), "$"),
        (lambda d: d.update(field="R"), "$.field"),
        (lambda d: d.update(dim=0), "$.dim"),
        (lambda d: d["beta"][1].pop(), "$.beta[1]"),
        (lambda d: d.update(extra=1), "$"),
    ],
)
def test_invalid_documents_name_location(mutate, location):
    doc = _base_doc()
    mutate(doc)
    with pytest.raises(DocumentError) as info:
        algebra_from_json(doc)
    assert info.value.location == location


def test_operator_documents():
    A = catalog.example_4_22()
    J = catalog.EX_4_22_J["J3"]
    kind, M = operator_from_json(operator_to_json("complex", J), A)
    assert kind == "complex" and M == J
    with pytest.raises(DocumentError) as info:
        operator_from_json({"kind": "complex", "matrix": [["1"]]}, A)
    assert info.value.location == "$.matrix"
    with pytest.raises(DocumentError):
        operator_from_json({"kind": "rotation", "matrix": [["1"]]})
    with pytest.raises(DocumentError) as info:
        operator_from_json({"kind": "product", "matrix": [["i", "0", "0", "0"]] * 4}, A)
    assert "field mismatch" in info.value.message


def test_pair_documents():
    A = catalog.example_4_22()
    J, E = catalog.EX_4_22_J["J1"], catalog.EX_4_22_E["E1"]
    assert pair_from_json(pair_to_json(J, E), A) == (J, E)
    with pytest.raises(DocumentError):
        pair_from_json({"kind": "pair", "J": [["1"]]}, A)


def test_load_errors(tmp_path):
    with pytest.raises(DocumentError, match="cannot read"):
        load_document(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    with pytest.raises(DocumentError, match="invalid JSON"):
        load_document(bad)
    good = tmp_path / "good.json"
    good.write_text(dumps(_base_doc()))
    assert load_algebra(good).same_structure(catalog.example_3_18())
