"""Fraser's tensor product of semilattices, computed through bi-filters.

An element generated by a finite pair set U is identified with the least
bi-filter containing U; the order is reverse inclusion of these bi-filters.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .caps import check_cap
from .closure import indices_of, mask_of, next_closure
from .effects import default_effects
from .errors import ConsistencyError, PreconditionError
from .lattice import SemiLattice, _bits
from .tensor import Pair, minimal_leq_criterion, product

__all__ = [
    "is_bifilter",
    "bifilter_closure",
    "fraser_member",
    "fraser_leq",
    "fraser_equal",
    "enumerate_fraser",
    "iter_fraser",
    "compare_orders",
    "CarrierComparison",
    "compare_carriers",
]


class _Grid:
    """Bitmask bookkeeping for S_A × S_B, pairs indexed A-major."""

    def __init__(self, lat_a: SemiLattice, lat_b: SemiLattice):
        self.lat_a, self.lat_b = lat_a, lat_b
        na, nb = len(lat_a), len(lat_b)
        self.na, self.nb = na, nb
        self.size = na * nb
        self.pairs: tuple[Pair, ...] = tuple((x, y) for x in lat_a.elements for y in lat_b.elements)
        self.up = [
            sum(1 << (i * nb + j) for i in _bits(lat_a.up_mask(a)) for j in _bits(lat_b.up_mask(b)))
            for a in range(na)
            for b in range(nb)
        ]

    def mask(self, pairs: Iterable[Pair]) -> int:
        out = 0
        for x, y in pairs:
            out |= 1 << (self.lat_a.index(x) * self.nb + self.lat_b.index(y))
        return out

    def pairs_of(self, mask: int) -> frozenset[Pair]:
        return frozenset(self.pairs[k] for k in _bits(mask))

    def close(self, mask: int) -> int:
        meet_a, meet_b = self.lat_a.meet_table, self.lat_b.meet_table
        na, nb = self.na, self.nb
        while True:
            before = mask
            for k in list(_bits(mask)):
                mask |= self.up[k]
            for b in range(nb):
                column = [a for a in range(na) if mask >> (a * nb + b) & 1]
                for a1 in column:
                    for a2 in column:
                        mask |= 1 << (meet_a[a1][a2] * nb + b)
            for a in range(na):
                row = [b for b in range(nb) if mask >> (a * nb + b) & 1]
                for b1 in row:
                    for b2 in row:
                        mask |= 1 << (a * nb + meet_b[b1][b2])
            if mask == before:
                return mask

    def violation(self, mask: int) -> tuple | None:
        meet_a, meet_b = self.lat_a.meet_table, self.lat_b.meet_table
        nb = self.nb
        for k in _bits(mask):
            missing = self.up[k] & ~mask
            if missing:
                return ("up-closed", self.pairs[k], self.pairs[next(_bits(missing))])
        for k1 in _bits(mask):
            a1, b1 = divmod(k1, nb)
            for k2 in _bits(mask):
                a2, b2 = divmod(k2, nb)
                if b1 == b2 and not mask >> (meet_a[a1][a2] * nb + b1) & 1:
                    return ("meet-first", self.pairs[k1], self.pairs[k2])
                if a1 == a2 and not mask >> (a1 * nb + meet_b[b1][b2]) & 1:
                    return ("meet-second", self.pairs[k1], self.pairs[k2])
        return None


@lru_cache(maxsize=64)
def _grid(lat_a: SemiLattice, lat_b: SemiLattice) -> _Grid:
    return _Grid(lat_a, lat_b)


def _generators(grid: _Grid, pairs: Iterable[Pair]) -> int:
    mask = grid.mask(pairs)
    if not mask:
        raise PreconditionError("a generating pair set must be nonempty")
    return mask


def is_bifilter(lat_a: SemiLattice, lat_b: SemiLattice, pairs: Iterable[Pair]) -> bool:
    return _grid(lat_a, lat_b).violation(_grid(lat_a, lat_b).mask(pairs)) is None


def bifilter_closure(lat_a: SemiLattice, lat_b: SemiLattice, pairs: Iterable[Pair]) -> frozenset[Pair]:
    """Least bi-filter containing a nonempty pair set."""
    grid = _grid(lat_a, lat_b)
    return grid.pairs_of(grid.close(_generators(grid, pairs)))


def fraser_member(lat_a: SemiLattice, lat_b: SemiLattice, pairs: Iterable[Pair], pair: Pair) -> bool:
    """Whether the meet of the pure tensors of ``pairs`` lies below that of ``pair``."""
    grid = _grid(lat_a, lat_b)
    closed = grid.close(_generators(grid, pairs))
    return bool(closed & grid.mask([pair]))


def fraser_leq(lat_a: SemiLattice, lat_b: SemiLattice, left: Iterable[Pair], right: Iterable[Pair]) -> bool:
    grid = _grid(lat_a, lat_b)
    closed = grid.close(_generators(grid, left))
    want = _generators(grid, right)
    return want & ~closed == 0


def fraser_equal(lat_a: SemiLattice, lat_b: SemiLattice, left: Iterable[Pair], right: Iterable[Pair]) -> bool:
    grid = _grid(lat_a, lat_b)
    return grid.close(_generators(grid, left)) == grid.close(_generators(grid, right))


def iter_fraser(lat_a: SemiLattice, lat_b: SemiLattice) -> Iterator[frozenset[Pair]]:
    grid = _grid(lat_a, lat_b)
    check_cap("minimal", grid.size, f"Fraser tensor {lat_a.name}⊗{lat_b.name}")
    for mask in next_closure(grid.size, lambda m: grid.close(m) if m else 0):
        if mask:
            yield grid.pairs_of(mask)


def enumerate_fraser(lat_a: SemiLattice, lat_b: SemiLattice) -> list[frozenset[Pair]]:
    """Every nonempty bi-filter, in lectic order of the pair order."""
    return list(iter_fraser(lat_a, lat_b))


def compare_orders(lat_a: SemiLattice, lat_b: SemiLattice, pairs: Iterable[Pair], pair: Pair) -> dict[str, bool]:
    """Both order verdicts for ``⊓ pairs ⊑ pair``; the Fraser one must imply the minimal one."""
    pairs = list(pairs)
    fraser = fraser_member(lat_a, lat_b, pairs, pair)
    minimal = minimal_leq_criterion(lat_a, lat_b, pairs, pair)
    if fraser and not minimal:
        raise ConsistencyError(f"Fraser order holds but minimal order fails for {pairs} and {pair}")
    return {"fraser": fraser, "minimal": minimal}


@dataclass(frozen=True)
class CarrierComparison:
    fraser_count: int
    minimal_count: int
    bijective: bool
    order_preserving: bool
    order_reflecting: bool
    witness: object = None

    @property
    def isomorphic(self) -> bool:
        return self.bijective and self.order_preserving and self.order_reflecting


def compare_carriers(lat_a: SemiLattice, lat_b: SemiLattice) -> CarrierComparison:
    """Compare the Fraser carrier with the minimal carrier under F ↦ Galois closure of F.

    Both orders are reverse inclusion of closed pair sets.  The minimal side
    uses the default effect spaces of the two factors.
    """
    fraser = enumerate_fraser(lat_a, lat_b)
    ctx = product(default_effects(lat_a), default_effects(lat_b))
    minimal_masks = set(next_closure(len(ctx.pairs), ctx.closure_mask)) - {0}
    grid = _grid(lat_a, lat_b)
    image = []
    for f in fraser:
        image.append(ctx.closure_mask(mask_of(ctx.pair_indices(f))))
    bijective = len(set(image)) == len(fraser) and set(image) == minimal_masks
    witness = None
    preserving = reflecting = True
    masks = [grid.mask(f) for f in fraser]
    for i, fi in enumerate(masks):
        for j, fj in enumerate(masks):
            f_le = fi & ~fj == 0
            m_le = image[i] & ~image[j] == 0
            if f_le and not m_le and preserving:
                preserving = False
                witness = witness or ("not preserving", sorted(fraser[i]), sorted(fraser[j]))
            if m_le and not f_le and reflecting:
                reflecting = False
                witness = witness or ("not reflecting", sorted(fraser[i]), sorted(fraser[j]))
    if not bijective and witness is None:
        missing = minimal_masks - set(image)
        witness = ("not bijective", [sorted(ctx.pairs_of(indices_of(m))) for m in sorted(missing)][:3])
    return CarrierComparison(len(fraser), len(minimal_masks), bijective, preserving, reflecting, witness)
