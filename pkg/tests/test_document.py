import json

import pytest

from kslie.catalog import list_entries, load_entry
from kslie.document import DocumentError, document_dict, emit_document, from_catalog, parse_document
from kslie.ksymp import verify_certificate

ALL = list_entries(include_extras=True)


def sl2_doc(**extra):
    d = {"format_version": 1, "name": "sl2", "dim": 3,
         "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}, {"i": 3, "j": 1, "coeffs": {"1": 2}},
                      {"i": 3, "j": 2, "coeffs": {"2": -2}}],
         "metric": [{"i": 1, "j": 2, "value": 1}, {"i": 3, "j": 3, "value": "2"}]}
    d.update(extra)
    return d


@pytest.mark.parametrize("name", ALL)
def test_round_trip(name):
    doc = from_catalog(name)
    text = emit_document(doc)
    back = parse_document(text)
    e = load_entry(name)
    assert back.algebra == e.algebra
    assert back.metric == e.metric
    assert [c.h for c in back.certificates] == [c.h for c in e.certificates]
    assert [c.thetas for c in back.certificates] == [c.thetas for c in e.certificates]
    assert all(verify_certificate(back.algebra, c).ok for c in back.certificates)
    assert emit_document(back) == text


def test_minimal_document():
    doc = parse_document(json.dumps(sl2_doc()))
    assert doc.algebra == load_entry("sl2R").algebra
    assert doc.metric == load_entry("sl2R").metric
    assert list(doc.algebra.names) == ["e1", "e2", "e3"]


def test_fractions_accepted():
    d = sl2_doc(metric=[{"i": 1, "j": 2, "value": "1/2"}, {"i": 3, "j": 3, "value": "1"}])
    doc = parse_document(json.dumps(d))
    assert str(doc.metric.matrix[0, 1]) == "1/2"


@pytest.mark.parametrize("mutate,match", [
    (lambda d: d["brackets"].append({"i": 2, "j": 1, "coeffs": {"3": 1}}), "twice"),
    (lambda d: d["brackets"].append({"i": 1, "j": 1, "coeffs": {}}), "zero"),
    (lambda d: d["brackets"][0].update(coeffs={"3": 1.0}), "rationals"),
    (lambda d: d["brackets"][0].update(coeffs={"3": True}), "rationals"),
    (lambda d: d["brackets"][0].update(i=4), "outside"),
    (lambda d: d["brackets"][0].update(i=True), "outside"),
    (lambda d: d["metric"].append({"i": 2, "j": 1, "value": 1}), "twice"),
    (lambda d: d.update(format_version=2), "format_version"),
    (lambda d: d.update(dim=-1), "dim"),
    (lambda d: d.update(certificates=[{"k": 3, "h": [], "thetas": []}]), "k = 3"),
])
def test_malformed_documents(mutate, match):
    d = sl2_doc()
    mutate(d)
    with pytest.raises(DocumentError, match=match):
        parse_document(json.dumps(d))


def test_not_json():
    with pytest.raises(DocumentError):
        parse_document("{oops")
    with pytest.raises(DocumentError):
        parse_document("[1, 2]")


def test_document_dict_is_json_ready():
    d = document_dict(from_catalog("n1(2,2)"))
    assert json.loads(json.dumps(d)) == d
    assert len(d["certificates"]) == 2
