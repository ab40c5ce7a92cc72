from hypothesis import given, settings
from hypothesis import strategies as st

from chutensor.closure import indices_of, mask_of, next_closure


def closure_from_implications(rules):
    def close(mask):
        while True:
            before = mask
            for premise, conclusion in rules:
                if mask & premise == premise:
                    mask |= conclusion
            if mask == before:
                return mask

    return close


rules_strategy = st.lists(
    st.tuples(st.integers(0, 31), st.integers(0, 31)), max_size=6
)


@settings(max_examples=80, deadline=None)
@given(rules_strategy)
def test_next_closure_lists_every_closed_set_once_in_lectic_order(rules):
    close = closure_from_implications(rules)
    got = list(next_closure(5, close))
    expected = {close(m) for m in range(32)}
    assert len(got) == len(set(got))
    assert set(got) == expected

    def lectic_key(mask):
        # lectic order: compare by the smallest index where the sets differ
        return [mask >> i & 1 for i in range(5)]

    assert got == sorted(got, key=lectic_key)


def test_mask_helpers():
    assert mask_of([0, 2, 5]) == 0b100101
    assert list(indices_of(0b100101)) == [0, 2, 5]
