"""Ganter's next-closure enumeration of all closed sets of a closure operator."""

from __future__ import annotations

from typing import Callable, Iterator


def next_closure(size: int, close: Callable[[int], int]) -> Iterator[int]:
    """Yield every closed set (as a bitmask over ``range(size)``) exactly once, in lectic order.

    ``close`` must be extensive, monotone and idempotent on bitmasks.
    """
    full = (1 << size) - 1
    current = close(0)
    yield current
    while current != full:
        for i in reversed(range(size)):
            bit = 1 << i
            if current & bit:
                current &= ~bit
                continue
            candidate = close(current | bit)
            # accept if the closure adds nothing below position i
            if (candidate & ~current) & (bit - 1) == 0:
                current = candidate
                break
        else:  # pragma: no cover - unreachable for a genuine closure operator
            raise AssertionError("next_closure: operator is not a closure")
        yield current


def mask_of(indices) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out
