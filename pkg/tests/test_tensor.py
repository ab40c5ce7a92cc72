import itertools
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chutensor.errors import PreconditionError
from chutensor.tensor import (
    enumerate_maximal,
    enumerate_minimal,
    enumerate_regular,
    galois_closure,
    is_maximal_member,
    is_minimal_member,
    is_regular_member,
    marginal_eta,
    marginal_lambda,
    minimal_leq,
    minimal_leq_criterion,
    minimal_tables,
    omega,
    product,
    pure_tensor,
    sup_minimal,
    table_leq,
    table_meet,
)
from chutensor.verify.fixtures import fixture
from chutensor.verify.suites import least_upper_bound

import oracles


def cells_of(table):
    return tuple(tuple(row) for row in table.cells.tolist())


@pytest.mark.parametrize("a,b", [("CHAIN2", "CHAIN2"), ("BOOL", "CHAIN2"), ("CHAIN2", "FLAT3"), ("BOOL", "BOOL")])
def test_minimal_enumeration_matches_all_subsets(a, b, space):
    chu_a, chu_b = space(a), space(b)
    got = {cells_of(t) for t in minimal_tables(chu_a, chu_b)}
    assert len(got) == len(minimal_tables(chu_a, chu_b))
    assert got == oracles.minimal_carrier(chu_a, chu_b)


def test_minimal_counts(space):
    assert len(enumerate_minimal(space("CHAIN2"), space("CHAIN2"))) == 5
    assert len(enumerate_minimal(space("FLAT4STAR"), space("FLAT4STAR"))) == 113


@pytest.mark.parametrize(
    "a,b,count",
    [("CHAIN2", "CHAIN2", 210), ("BOOL", "CHAIN2", 1200), ("CHAIN2", "BOOL", 1200), ("CHAIN3", "CHAIN3", 22770)],
)
def test_maximal_enumeration_matches_cellwise_search(a, b, count, space):
    chu_a, chu_b = space(a), space(b)
    got = [cells_of(t) for t in enumerate_maximal(chu_a, chu_b)]
    assert len(got) == count
    assert set(got) == set(oracles.maximal_tables(chu_a, chu_b))


def test_maximal_bool_square_matches_cellwise_search(space):
    chu = space("BOOL")
    got = {cells_of(t) for t in enumerate_maximal(chu, chu)}
    assert len(got) == 16677
    assert got == set(oracles.maximal_tables(chu, chu))


@pytest.mark.parametrize("a,b", [("CHAIN2", "CHAIN2"), ("BOOL", "CHAIN2"), ("BOOL", "BOOL")])
def test_regular_search_equals_filtered_maximal(a, b, space):
    chu_a, chu_b = space(a), space(b)
    filtered = {t for t in enumerate_maximal(chu_a, chu_b) if is_regular_member(t)}
    assert set(enumerate_regular(chu_a, chu_b)) == filtered


def test_minimal_members_are_regular(space):
    chu = space("FLAT4STAR")
    for t in minimal_tables(chu, chu):
        assert is_maximal_member(t) and is_regular_member(t)


def test_regular_count_flat4star(space):
    chu = space("FLAT4STAR")
    assert len(enumerate_regular(chu, chu)) == 233


def test_membership_rejections(space):
    ctx = product(space("BOOL"), space("BOOL"))
    zero = ctx.table(np.zeros(ctx.shape, dtype=np.uint8))
    assert not is_maximal_member(zero)
    assert not is_minimal_member(zero)
    with pytest.raises(PreconditionError):
        is_regular_member(zero)
    with pytest.raises(PreconditionError):
        ctx.table(np.zeros((2, 2)))


def test_marginals(space):
    chu_a, chu_b = space("FLAT3"), space("BOOL")
    phi = pure_tensor(chu_a, chu_b, "s2", "N")
    assert marginal_eta(phi) == "s2"
    assert marginal_lambda(phi) == "N"
    both = omega(chu_a, chu_b, [("s1", "Y"), ("s2", "Y")])
    assert marginal_eta(both) == "bot"
    assert marginal_lambda(both) == "Y"


def test_table_rendering(space):
    t = pure_tensor(space("BOOL"), space("BOOL"), "Y", "N")
    doc = t.to_dict()
    assert len(doc["effects_a"]) == 9 and len(doc["cells"]) == 9
    assert set(" ".join(doc["cells"]).split()) <= {"Y", "N", "⊥"}


@pytest.mark.parametrize("a,b", [("FLAT3", "FLAT3"), ("BOOL", "FLAT3"), ("CHAIN2", "FLAT4STAR")])
def test_criterion_matches_pointwise_order(a, b, space):
    chu_a, chu_b = space(a), space(b)
    lat_a, lat_b = chu_a.states, chu_b.states
    pairs = oracles.all_pairs(lat_a, lat_b)
    for subset in oracles.nonempty_subsets(pairs, 2):
        left = oracles.pointwise_omega(chu_a, chu_b, subset)
        for target in pairs:
            right = oracles.pointwise_omega(chu_a, chu_b, [target])
            assert minimal_leq_criterion(lat_a, lat_b, subset, target) == oracles.pointwise_leq(left, right)


def test_criterion_warns_on_large_inputs():
    lat = fixture("FLAT4STAR")
    pairs = oracles.all_pairs(lat, lat)[:21]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        minimal_leq_criterion(lat, lat, pairs, ("a", "a"))
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)


def test_minimal_leq_on_pair_sets():
    lat = fixture("FLAT3")
    diag = [("s1", "s1"), ("s2", "s2"), ("s3", "s3")]
    assert minimal_leq(lat, lat, diag, [("bot", "bot"), ("s1", "s1")])
    assert minimal_leq(lat, lat, [("bot", "bot")], diag)
    assert not minimal_leq(lat, lat, [("s1", "s1")], [("s2", "s2")])
    with pytest.raises(PreconditionError):
        minimal_leq(lat, lat, [], diag)


@pytest.mark.parametrize("a,b", [("CHAIN2", "CHAIN2"), ("BOOL", "BOOL"), ("BOOL", "CHAIN2")])
def test_sup_matches_least_upper_bound(a, b, space):
    chu_a, chu_b = space(a), space(b)
    tables = minimal_tables(chu_a, chu_b)
    for phi, psi in itertools.combinations_with_replacement(tables, 2):
        assert sup_minimal(phi, psi) == least_upper_bound(tables, phi, psi)


def test_sup_can_be_missing(space):
    chu = space("FLAT3")
    assert sup_minimal(pure_tensor(chu, chu, "s1", "s1"), pure_tensor(chu, chu, "s2", "s1")) is None


FLAT3 = fixture("FLAT3")
flat_pairs = st.sampled_from(oracles.all_pairs(FLAT3, FLAT3))


@settings(max_examples=60, deadline=None)
@given(st.lists(flat_pairs, min_size=1, max_size=4), st.lists(flat_pairs, min_size=1, max_size=4))
def test_galois_law(left, right):
    chu = natural_flat3()
    phi = omega(chu, chu, left)
    closed = galois_closure(phi)
    assert set(left) <= closed
    assert (set(right) <= closed) == table_leq(phi, omega(chu, chu, right))
    assert omega(chu, chu, closed) == phi
    assert galois_closure(omega(chu, chu, closed)) == closed


@settings(max_examples=60, deadline=None)
@given(st.lists(flat_pairs, min_size=1, max_size=4), st.lists(flat_pairs, min_size=1, max_size=4))
def test_omega_of_union_is_meet(left, right):
    chu = natural_flat3()
    assert omega(chu, chu, left + right) == table_meet([omega(chu, chu, left), omega(chu, chu, right)])
    assert table_leq(omega(chu, chu, left + right), omega(chu, chu, left))


def natural_flat3():
    from chutensor.effects import natural_effects

    return _flat3_cache.setdefault("space", natural_effects(FLAT3))


_flat3_cache: dict = {}
