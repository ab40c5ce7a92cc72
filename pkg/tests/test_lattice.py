import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chutensor.errors import CapExceeded, PreconditionError, StructureError
from chutensor.lattice import (
    SemiLattice,
    canonical_star,
    distributivity_fails_at,
    find_stars,
    has_pure_description,
    is_distributive,
    is_simplex,
    non_simplex_witness,
    quasi_antipodal,
    validate_star,
)
from chutensor.verify.fixtures import FIXTURE_NAMES, fixture
from chutensor.verify.small import semilattices_of_size, small_semilattices

from oracles import meet_by_search, order_pairs

SMALL = small_semilattices(5)
any_small = st.sampled_from(SMALL)


def test_construction_errors():
    with pytest.raises(StructureError, match="cycle"):
        SemiLattice("c", ["b", "x", "y"], [("b", "x"), ("x", "y"), ("y", "x")], "b")
    with pytest.raises(StructureError, match="no meet"):
        # two maximal elements above two incomparable lower ones
        SemiLattice("w", ["b", "p", "q", "u", "v"],
                    [("b", "p"), ("b", "q"), ("p", "u"), ("q", "u"), ("p", "v"), ("q", "v")], "b")
    with pytest.raises(StructureError, match="duplicate"):
        SemiLattice("d", ["b", "b"], [], "b")
    with pytest.raises(StructureError, match="no meet"):
        SemiLattice("m", ["x", "y"], [], None)


def test_meet_and_covers_on_fixtures():
    flat = fixture("FLAT3")
    assert flat.meet(["s1", "s2"]) == "bot"
    assert flat.meet(["s1"]) == "s1"
    assert flat.covers == (("bot", "s1"), ("bot", "s2"), ("bot", "s3"))
    assert not flat.compatible("s1", "s2")
    assert flat.join_if_exists(["s1", "s2"]) is None
    assert flat.join_if_exists(["bot", "s2"]) == "s2"
    with pytest.raises(PreconditionError):
        flat.meet([])


def test_hasse_covers_are_transitive_reduction():
    lat = SemiLattice("c3", ["b", "m", "t"], [("b", "m"), ("m", "t"), ("b", "t")], "b")
    assert lat.covers == (("b", "m"), ("m", "t"))


def test_irreducibles_and_maximal_elements():
    assert fixture("BOOL").meet_irreducibles() == ("Y", "N")
    assert fixture("FLAT3").meet_irreducibles() == ("s1", "s2", "s3")
    # the bottom of a chain has a single element strictly above it, so it is irreducible
    assert fixture("CHAIN2").meet_irreducibles() == ("bot", "t")
    assert fixture("CHAIN2").maximal_elements() == ("t",)


def test_classifiers_on_fixtures():
    assert has_pure_description(fixture("BOOL"))
    assert is_simplex(fixture("BOOL"))
    assert is_distributive(fixture("BOOL")) == (False, ("Y", "bot", "N"))
    flat = fixture("FLAT3")
    verdict = is_simplex(flat)
    assert not verdict and verdict.witness[0] == "bot"
    assert flat.meet(verdict.witness[1]) == flat.meet(verdict.witness[2]) == "bot"
    assert verdict.witness[1] != verdict.witness[2]
    assert distributivity_fails_at(flat, "s3", "s1", "s2")
    assert non_simplex_witness(flat) == ("s1", "s2", "s3")
    assert non_simplex_witness(fixture("BOOL")) is None
    for name in ("CHAIN2", "CHAIN3"):
        assert is_distributive(fixture(name))
        assert not has_pure_description(fixture(name))
        with pytest.raises(PreconditionError):
            is_simplex(fixture(name))


def test_stars():
    f4 = fixture("FLAT4STAR")
    assert validate_star(f4).valid
    assert len(find_stars(f4)) == 3
    assert quasi_antipodal(f4, "a", "a*")
    assert not quasi_antipodal(f4, "a", "a")
    report = validate_star(fixture("BOOL"), {"Y": "Y", "N": "N"})
    assert not report.valid and report.violations[0][0] == "quasi-antipodal"
    assert canonical_star(fixture("BOOL")) == {"Y": "N", "N": "Y"}
    assert find_stars(fixture("FLAT3")) == []


def test_small_semilattice_counts():
    # one-element-larger lattices: 1, 1, 2, 5, 15, 53
    assert [len(semilattices_of_size(n)) for n in range(1, 7)] == [1, 1, 2, 5, 15, 53]
    assert len(SMALL) == 24


def test_classifier_cap(monkeypatch):
    monkeypatch.setenv("CHUTENSOR_CAPS", "classifier=3")
    with pytest.raises(CapExceeded):
        is_distributive(fixture("FLAT3"))


@settings(max_examples=60, deadline=None)
@given(any_small, st.data())
def test_meet_matches_exhaustive_search(lat, data):
    x = data.draw(st.sampled_from(lat.elements))
    y = data.draw(st.sampled_from(lat.elements))
    assert lat.meet([x, y]) == meet_by_search(lat, x, y)
    assert lat.meet([x, y]) == lat.meet([y, x])
    assert lat.meet([x, x]) == x


@settings(max_examples=40, deadline=None)
@given(any_small)
def test_order_is_a_partial_order_with_bottom(lat):
    leq = order_pairs(lat)
    for x in lat.elements:
        assert (x, x) in leq
        assert (lat.bottom, x) in leq
        for y in lat.elements:
            if (x, y) in leq and (y, x) in leq:
                assert x == y


@settings(max_examples=40, deadline=None)
@given(any_small)
def test_simplex_classifier_agrees_with_decomposition_count(lat):
    """Simplex iff every state has exactly one set of pure states meeting to it."""
    from itertools import combinations

    if not has_pure_description(lat):
        return
    pure = lat.maximal_elements()
    unique = True
    for x in lat.elements:
        count = sum(
            1
            for k in range(1, len(pure) + 1)
            for subset in combinations(pure, k)
            if lat.meet(subset) == x
        )
        unique &= count == 1
    assert bool(is_simplex(lat)) == unique


def test_fixture_names():
    assert FIXTURE_NAMES == ("BOOL", "CHAIN2", "CHAIN3", "FLAT3", "FLAT4STAR")
    assert fixture("FLAT4*") == fixture("FLAT4STAR")
