import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chutensor.errors import PreconditionError
from chutensor.fraser import (
    bifilter_closure,
    compare_carriers,
    compare_orders,
    enumerate_fraser,
    fraser_equal,
    fraser_leq,
    fraser_member,
    is_bifilter,
)
from chutensor.verify.fixtures import fixture

import oracles


@pytest.mark.parametrize("a,b", [("CHAIN2", "CHAIN2"), ("BOOL", "CHAIN2"), ("CHAIN2", "CHAIN3")])
def test_enumeration_matches_all_subsets(a, b):
    lat_a, lat_b = fixture(a), fixture(b)
    assert set(enumerate_fraser(lat_a, lat_b)) == set(oracles.bifilters(lat_a, lat_b))


def test_counts():
    chain = fixture("CHAIN2")
    assert len(enumerate_fraser(chain, chain)) == 5
    flat = fixture("FLAT3")
    assert len(enumerate_fraser(flat, flat)) == 49


BOOL, CHAIN2 = fixture("BOOL"), fixture("CHAIN2")
BOOL_CHAIN_FILTERS = oracles.bifilters(BOOL, CHAIN2)
grid_pairs = st.sampled_from(oracles.all_pairs(BOOL, CHAIN2))


@settings(max_examples=80, deadline=None)
@given(st.lists(grid_pairs, min_size=1, max_size=4))
def test_closure_is_least_bifilter(generators):
    closed = bifilter_closure(BOOL, CHAIN2, generators)
    assert closed == oracles.least_bifilter(BOOL_CHAIN_FILTERS, generators)
    assert is_bifilter(BOOL, CHAIN2, closed)
    assert oracles.is_bifilter(BOOL, CHAIN2, closed)
    assert bifilter_closure(BOOL, CHAIN2, closed) == closed


@settings(max_examples=80, deadline=None)
@given(st.lists(grid_pairs, min_size=1, max_size=3), st.lists(grid_pairs, min_size=1, max_size=3))
def test_order_is_inclusion_of_closures(left, right):
    closed_left = bifilter_closure(BOOL, CHAIN2, left)
    assert fraser_leq(BOOL, CHAIN2, left, right) == (set(right) <= closed_left)
    assert fraser_equal(BOOL, CHAIN2, left, right) == (closed_left == bifilter_closure(BOOL, CHAIN2, right))


def test_member_and_diagonal_divergence():
    flat = fixture("FLAT3")
    diag = [("s1", "s1"), ("s2", "s2"), ("s3", "s3")]
    assert not fraser_member(flat, flat, diag, ("bot", "bot"))
    assert fraser_member(flat, flat, [("bot", "s1"), ("s1", "s1")], ("bot", "s1"))
    assert compare_orders(flat, flat, diag, ("bot", "bot")) == {"fraser": False, "minimal": True}
    with pytest.raises(PreconditionError):
        bifilter_closure(flat, flat, [])


def test_carrier_comparison():
    iso = compare_carriers(fixture("CHAIN2"), fixture("FLAT3"))
    assert iso.isomorphic
    assert iso.fraser_count == iso.minimal_count
    flat = fixture("FLAT3")
    non_iso = compare_carriers(flat, flat)
    assert (non_iso.fraser_count, non_iso.minimal_count) == (49, 43)
    assert not non_iso.isomorphic and non_iso.order_preserving
    assert non_iso.witness is not None
