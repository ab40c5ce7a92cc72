"""Exhaustive generation of small meet-semilattices with bottom, up to isomorphism.

Posets are grown one maximal element at a time in a natural labelling (every
element is added after everything below it).  Each prefix of such a labelling
is a down-set of the final poset, and meets of a down-set stay inside it, so
every prefix of a meet-semilattice is itself a meet-semilattice.  That lets
the search prune as soon as a pair loses its meet.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from ..lattice import SemiLattice


def _has_meets(down: list[int]) -> bool:
    n = len(down)
    for i in range(n):
        for j in range(i + 1, n):
            lower = down[i] & down[j]
            if not any(down[k] == lower for k in range(n) if lower >> k & 1):
                return False
    return True


def _new_element_ok(down: list[int], new_down: int) -> bool:
    n = len(down)
    for j in range(n):
        lower = new_down & down[j]
        if not any(down[k] == lower for k in range(n) if lower >> k & 1):
            return False
    return True


def _down_closed_sets(down: list[int]):
    n = len(down)
    for mask in range(1, 1 << n):
        if all(down[k] & ~mask == 0 for k in range(n) if mask >> k & 1):
            yield mask


def _canonical_key(down: list[int]) -> tuple:
    n = len(down)
    up = [sum(1 << j for j in range(n) if down[j] >> i & 1) for i in range(n)]
    invariant = [(bin(down[i]).count("1"), bin(up[i]).count("1")) for i in range(n)]
    blocks: dict[tuple, list[int]] = {}
    for i in range(n):
        blocks.setdefault(invariant[i], []).append(i)
    ordered = [blocks[k] for k in sorted(blocks)]
    best = None
    for choice in product(*(permutations(b) for b in ordered)):
        order = [i for block in choice for i in block]
        pos = {old: new for new, old in enumerate(order)}
        key = tuple(
            sorted(pos[j] for j in range(n) if down[old] >> j & 1) for old in order
        )
        if best is None or key < best:
            best = key
    return tuple(tuple(k) for k in best)


@lru_cache(maxsize=None)
def _shapes(size: int) -> tuple[tuple[int, ...], ...]:
    """Down-set bitmasks of one representative per isomorphism class."""
    if size == 1:
        return ((1,),)
    seen: dict[tuple, tuple[int, ...]] = {}
    frontier = [[1]]
    for n in range(1, size):
        grown = []
        for down in frontier:
            for mask in _down_closed_sets(down):
                if _new_element_ok(down, mask):
                    grown.append(down + [mask | 1 << n])
        frontier = grown
    for down in frontier:
        if _has_meets(down):
            seen.setdefault(_canonical_key(down), tuple(down))
    return tuple(seen[k] for k in sorted(seen))


def semilattices_of_size(size: int) -> list[SemiLattice]:
    result = []
    for number, down in enumerate(_shapes(size)):
        names = ["bot"] + [f"x{i}" for i in range(1, size)]
        covers = [
            (names[j], names[i])
            for i in range(size)
            for j in range(size)
            if i != j and down[i] >> j & 1
        ]
        result.append(SemiLattice(f"SL{size}_{number}", names, covers, "bot"))
    return result


def small_semilattices(max_size: int) -> list[SemiLattice]:
    """All meet-semilattices with bottom having at most ``max_size`` elements, up to isomorphism."""
    return [lat for size in range(1, max_size + 1) for lat in semilattices_of_size(size)]
