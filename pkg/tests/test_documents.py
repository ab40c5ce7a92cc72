import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chutensor.errors import PreconditionError, SchemaError, StructureError
from chutensor.verify.documents import (
    dump_semilattice,
    format_pairset,
    load_semilattice,
    parse_pair,
    parse_pairset,
    read_semilattice,
    save_semilattice,
)
from chutensor.verify.export import export, hasse_edges
from chutensor.verify.fixtures import FIXTURE_NAMES, fixture
from chutensor.verify.small import small_semilattices
from chutensor.effects import natural_effects


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip(name, tmp_path):
    lat = fixture(name)
    text = save_semilattice(lat)
    path = tmp_path / f"{name}.json"
    path.write_text(text, encoding="utf-8")
    again = read_semilattice(path)
    assert again == lat
    assert save_semilattice(again) == text


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(small_semilattices(5)))
def test_generated_round_trip(lat):
    doc = json.loads(save_semilattice(lat))
    assert load_semilattice(doc) == lat
    assert dump_semilattice(load_semilattice(doc)) == doc


def test_schema_errors(tmp_path):
    with pytest.raises(SchemaError, match="unknown keys"):
        load_semilattice({"name": "x", "elements": ["b"], "extra": 1})
    with pytest.raises(SchemaError, match="schema_version"):
        load_semilattice({"schema_version": 9, "name": "x", "elements": ["b"]})
    with pytest.raises(SchemaError):
        read_semilattice(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(SchemaError, match="invalid document"):
        read_semilattice(bad)
    with pytest.raises(StructureError):
        load_semilattice({"name": "x", "elements": ["b", "b"]})


def test_pair_literals():
    assert parse_pair(" (s1, bot) ") == ("s1", "bot")
    pairs = parse_pairset("[(s1,s1), (s2,s2),(s1,s1)]")
    assert pairs == [("s1", "s1"), ("s2", "s2")]
    assert format_pairset(pairs) == "[(s1,s1),(s2,s2)]"
    with pytest.raises(SchemaError):
        parse_pair("(a,b")
    for text in ("[]", "[(a,b) (c,d)]", "(a,b)"):
        with pytest.raises(SchemaError):
            parse_pairset(text)


def test_dot_exports():
    dot = export(fixture("FLAT3"), "dot")
    assert dot.count("->") == 3
    assert len(_nodes(dot)) == 4
    assert len(_nodes(export(natural_effects(fixture("BOOL")), "dot"))) == 9
    with pytest.raises(PreconditionError):
        export(fixture("FLAT3"), "svg")


def _nodes(dot):
    return [line for line in dot.splitlines()[2:-1] if "->" not in line]


def test_hasse_edges_is_transitive_reduction():
    # a chain 0 < 1 < 2 < 3
    assert hasse_edges(4, lambda i, j: i <= j) == [(0, 1), (1, 2), (2, 3)]


def test_structured_export_is_canonical():
    lat = fixture("FLAT4STAR")
    assert export(lat, "structured") == save_semilattice(load_semilattice(json.loads(save_semilattice(lat))))
