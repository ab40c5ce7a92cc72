import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chutensor.boolean import BoolVal
from chutensor.effects import (
    ChuSpace,
    Effect,
    atoms,
    check_chu_axioms,
    effect_from_state_predicate,
    max_effects,
    natural_effects,
    parse_effect,
    reduced_effects,
    state_from_effect_predicate,
)
from chutensor.errors import PreconditionError, SchemaError
from chutensor.verify.fixtures import FIXTURE_NAMES, fixture
from chutensor.verify.small import small_semilattices

SMALL = small_semilattices(5)

NATURAL_COUNTS = {"BOOL": 9, "CHAIN2": 5, "CHAIN3": 7, "FLAT3": 15, "FLAT4STAR": 23}


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_natural_effect_counts(name, nat):
    assert len(nat(name)) == NATURAL_COUNTS[name]


def test_effect_listing_order(nat, red):
    assert [str(e) for e in nat("BOOL").effects] == [
        "l(Y,N)", "l(N,Y)", "l(bot,.)", "l(Y,.)", "l(N,.)", "l(.,bot)", "l(.,Y)", "l(.,N)", "l(.,.)",
    ]
    assert [str(e) for e in red("FLAT4STAR").effects] == [
        "l(a,a*)", "l(a*,a)", "l(b,b*)", "l(b*,b)", "l(bot,.)", "l(a,.)", "l(a*,.)", "l(b,.)",
        "l(b*,.)", "l(.,bot)", "l(.,a)", "l(.,a*)", "l(.,b)", "l(.,b*)", "l(.,.)",
    ]


def test_evaluation(nat):
    space = nat("FLAT3")
    e = Effect("s1", "s2")
    assert space.evaluate(e, "s1") is BoolVal.Y
    assert space.evaluate(e, "s2") is BoolVal.N
    assert space.evaluate(e, "s3") is BoolVal.BOT
    assert space.evaluate(space.y_effect, "bot") is BoolVal.Y
    assert space.evaluate(space.bottom_effect, "s1") is BoolVal.BOT


def test_parse_effect():
    assert parse_effect("l(a,.)") == Effect("a", None)
    assert parse_effect("(.,b)") == Effect(None, "b")
    assert str(parse_effect(" l( x , y ) ")) == "l(x,y)"
    with pytest.raises(SchemaError):
        parse_effect("l(a)")


def test_max_effects_and_atoms(red, nat):
    assert [str(e) for e in max_effects(red("FLAT4STAR"))] == [
        "l(a,a*)", "l(a*,a)", "l(b,b*)", "l(b*,b)", "l(bot,.)", "l(.,bot)",
    ]
    assert len(atoms(red("FLAT4STAR"))) == 8
    assert {str(e) for e in atoms(nat("BOOL"))} == {"l(Y,.)", "l(N,.)", "l(.,Y)", "l(.,N)"}
    with pytest.raises(PreconditionError):
        max_effects(nat("CHAIN2"))


def test_reduced_needs_star():
    with pytest.raises(PreconditionError, match="star"):
        reduced_effects(fixture("FLAT3"))


def test_broken_space_reports_violations():
    lat = fixture("BOOL")
    # dropping l(N,Y) breaks closure under bar
    space = ChuSpace(lat, [e for e in natural_effects(lat).effects if e != Effect("N", "Y")])
    assert "closed-under-bar" in check_chu_axioms(space).rules()
    # duplicated rows break extensionality
    twin = ChuSpace(lat, list(natural_effects(lat).effects) + [Effect("Y", "Y")])
    assert not check_chu_axioms(twin).passed


def test_chain_advisory(nat):
    report = check_chu_axioms(nat("CHAIN2"))
    assert report.passed
    assert report.advisories == (("two-sided-for-every-state", ("t",)),)


@pytest.mark.parametrize("lat", SMALL, ids=lambda lat: lat.name)
def test_natural_axioms_on_small_semilattices(lat):
    assert check_chu_axioms(natural_effects(lat)).violations == ()


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_state_round_trip(lat, data):
    space = natural_effects(lat)
    x = data.draw(st.sampled_from(lat.elements))
    column = [space.evaluate(e, x) for e in space.effects]
    assert state_from_effect_predicate(space, column) == x


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_effect_round_trip(lat, data):
    space = natural_effects(lat)
    e = data.draw(st.sampled_from(space.effects))
    assert effect_from_state_predicate(space, space.row(e)) == e


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_effect_meet_is_pointwise(lat, data):
    space = natural_effects(lat)
    e1 = data.draw(st.sampled_from(space.effects))
    e2 = data.draw(st.sampled_from(space.effects))
    m = space.effect_meet(e1, e2)
    for x in lat.elements:
        a, b = space.evaluate(e1, x), space.evaluate(e2, x)
        assert space.evaluate(m, x) == (a if a == b else BoolVal.BOT)
    assert space.effect_leq(m, e1) and space.effect_leq(m, e2)


def test_predicate_rejections(nat):
    space = nat("BOOL")
    with pytest.raises(PreconditionError, match="monotone"):
        effect_from_state_predicate(space, {"bot": BoolVal.Y, "Y": BoolVal.BOT, "N": BoolVal.BOT})
    with pytest.raises(PreconditionError, match="Y_E"):
        state_from_effect_predicate(space, [BoolVal.BOT] * len(space))
