from itertools import product

from hypothesis import given
from hypothesis import strategies as st

from chutensor.boolean import BoolVal, bool_meet, bullet

Y, N, BOT = BoolVal.Y, BoolVal.N, BoolVal.BOT
values = st.sampled_from(list(BoolVal))


def test_bullet_table():
    assert bullet(Y, N) == N
    assert bullet(BOT, Y) == BOT
    assert bullet(BOT, BOT) == BOT
    for x in BoolVal:
        assert bullet(x, Y) == x
        assert bullet(x, N) == N


def test_meet_and_order():
    assert bool_meet(Y, N) == BOT
    assert bool_meet(Y, Y) == Y
    assert BOT.leq(Y) and BOT.leq(N)
    assert not Y.leq(N) and not N.leq(Y)
    assert [x.bar() for x in (BOT, Y, N)] == [BOT, N, Y]


def test_printing_and_parsing():
    assert [str(x) for x in (BOT, Y, N)] == ["⊥", "Y", "N"]
    assert BoolVal.parse("⊥") is BOT
    assert BoolVal.parse("bot") is BOT
    assert BoolVal.parse(" N ") is N


@given(values, values)
def test_bullet_commutes(u, v):
    assert bullet(u, v) == bullet(v, u)


@given(values, values, values)
def test_bullet_associates_and_distributes_over_meet(u, v, w):
    assert bullet(bullet(u, v), w) == bullet(u, bullet(v, w))
    assert bullet(u, bool_meet(v, w)) == bool_meet(bullet(u, v), bullet(u, w))


def test_bullet_is_monotone():
    for u, u2, v in product(BoolVal, repeat=3):
        if u.leq(u2):
            assert bullet(u, v).leq(bullet(u2, v))
