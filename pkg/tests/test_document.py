import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import raw_spaces
from roughprob import BadMeasure, DocumentSyntaxError, EmptyImage, MissingValue, SchemaError, UnknownLabel
from roughprob.document import (
    FIXTURES,
    SpaceDocument,
    dump_space_document,
    fixture_path,
    load_space_document,
    parse_fraction,
    parse_space_document,
)

BASE = {"elements": ["a", "b"], "map": {"a": ["a"], "b": ["a", "b"]}}


def parse(**changes):
    return parse_space_document(json.dumps({**BASE, **changes}))


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_load(name):
    doc = load_space_document(fixture_path(name))
    space = doc.space()
    assert space.n == 6 and sum(space.weights) == 1
    assert doc.variable("U", space).levels == tuple(range(1, 7))
    assert doc.event("odd", space).labels == ("1", "3", "5")


def test_bare_fixture_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert load_space_document("example_2_1.json").elements == [str(i) for i in range(1, 7)]


@pytest.mark.parametrize("text, value", [("1/6", Fraction(1, 6)), ("-3", Fraction(-3)), ("2/6", Fraction(1, 3))])
def test_parse_fraction(text, value):
    assert parse_fraction(text) == value


@pytest.mark.parametrize("bad", ["0.5", "1/0", "1/-2", " 1", "", "1e3", 0.5, 1])
def test_parse_fraction_rejects(bad):
    with pytest.raises(ValueError):
        parse_fraction(bad)


def test_weights_canonicalised():
    doc = parse(weights={"a": "2/6", "b": "4/6"}, variables={"U": {"a": "4/2", "b": "-0"}})
    data = json.loads(dump_space_document(doc))
    assert data["weights"] == {"a": "1/3", "b": "2/3"}
    assert data["variables"] == {"U": {"a": "2", "b": "0"}}


@pytest.mark.parametrize("changes, error, where", [
    ({"map": {"a": ["a"]}}, SchemaError, "map"),
    ({"weights": {"a": "1/0", "b": "1"}}, SchemaError, "weights.a"),
    ({"weights": {"a": 0.5, "b": "1/2"}}, SchemaError, "weights.a"),
    ({"colour": "red"}, SchemaError, "colour"),
    ({"elements": "ab"}, SchemaError, "elements"),
    ({"map": {"a": [], "b": ["a"]}}, EmptyImage, "map"),
    ({"map": {"a": ["z"], "b": ["a"]}}, UnknownLabel, "map"),
    ({"weights": {"a": "1/2", "b": "1/3"}}, BadMeasure, "weights"),
    ({"weights": {"a": "1"}}, MissingValue, "weights"),
    ({"variables": {"U": {"a": "1"}}}, MissingValue, "variables.U"),
    ({"events": {"E": ["q"]}}, UnknownLabel, "events.E"),
])
def test_errors_name_the_field(changes, error, where):
    with pytest.raises(error) as info:
        parse(**changes)
    assert info.value.location == where


def test_missing_map_field():
    with pytest.raises(SchemaError) as info:
        parse_space_document(json.dumps({"elements": ["a"]}))
    assert info.value.location == "map"


def test_syntax_error_location():
    with pytest.raises(DocumentSyntaxError) as info:
        parse_space_document('{\n  "elements": ["a",\n}')
    assert info.value.location == "3:1"


def test_top_level_must_be_object():
    with pytest.raises(SchemaError):
        parse_space_document("[1, 2]")


def test_load_error_names_path(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    with pytest.raises(DocumentSyntaxError) as info:
        load_space_document(path)
    assert str(path) in str(info.value)


@given(raw_spaces(max_size=5), st.lists(st.integers(-9, 9), min_size=5, max_size=5))
def test_round_trip(raw, values):
    T, w = raw
    labels = list(T)
    doc = SpaceDocument(
        elements=labels,
        map={x: sorted(T[x]) for x in labels},
        weights=w,
        variables={"U": {x: Fraction(v, 3) for x, v in zip(labels, values)}},
        events={"first": labels[:1]},
    )
    text = dump_space_document(doc)
    again = parse_space_document(text)
    assert again == doc
    assert dump_space_document(again) == text
    assert again.space() == doc.space()
