"""Finite meet-semilattices with bottom, and their structural classifiers.

Elements are plain string ids.  Internally every element also has an index
(its position in declaration order) and the order is stored as bitmasks, so
``down[i]`` has bit ``j`` set iff element ``j`` lies below element ``i``.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .caps import check_cap
from .errors import PreconditionError, SchemaError, StructureError


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Verdict(NamedTuple):
    """A boolean answer together with a witness explaining a negative (or positive) outcome."""

    holds: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.holds


class SemiLattice:
    """An immutable finite meet-semilattice with a least element.

    The order is the reflexive-transitive closure of ``covers`` (pairs
    ``(lower, upper)``).  Construction fails with :class:`StructureError` if
    the covers contain a cycle, some pair of elements has no meet, or the
    declared bottom is not least.
    """

    def __init__(
        self,
        name: str,
        elements: Sequence[str],
        covers: Iterable[tuple[str, str]],
        bottom: str | None,
        star: Mapping[str, str] | None = None,
    ):
        self.name = str(name)
        elements = tuple(elements)
        if not elements:
            raise StructureError("a semilattice needs at least one element")
        seen: set[str] = set()
        for x in elements:
            if not isinstance(x, str) or not x:
                raise SchemaError(f"element ids must be non-empty strings, got {x!r}")
            if x in seen:
                raise StructureError(f"duplicate element id {x!r}")
            seen.add(x)
        self.elements: tuple[str, ...] = elements
        self._index = {x: i for i, x in enumerate(elements)}
        n = len(elements)

        below: list[set[int]] = [set() for _ in range(n)]
        for pair in covers:
            if len(pair) != 2:
                raise SchemaError(f"cover must be a (lower, upper) pair, got {pair!r}")
            lo, hi = (self.index(x) for x in pair)
            if lo == hi:
                raise StructureError(f"cycle in covers: {elements[lo]!r} covers itself")
            below[hi].add(lo)

        sorter = graphlib.TopologicalSorter({i: below[i] for i in range(n)})
        try:
            topo = list(sorter.static_order())
        except graphlib.CycleError as exc:
            cycle = [elements[i] for i in exc.args[1]]
            raise StructureError(f"cycle in covers: {' < '.join(cycle)}") from None

        down = [1 << i for i in range(n)]
        for i in topo:
            for j in below[i]:
                down[i] |= down[j]
        up = [0] * n
        for i in range(n):
            for j in _bits(down[i]):
                up[j] |= 1 << i
        self._down = tuple(down)
        self._up = tuple(up)

        meet_table = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                lower = down[i] & down[j]
                glb = next((k for k in _bits(lower) if down[k] == lower), None)
                if glb is None:
                    raise StructureError(f"no meet for ({elements[i]},{elements[j]})")
                meet_table[i][j] = meet_table[j][i] = glb
        self._meet = tuple(tuple(row) for row in meet_table)

        join_table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                upper = up[i] & up[j]
                if upper:
                    lub = next(k for k in _bits(upper) if up[k] == upper)
                    join_table[i][j] = join_table[j][i] = lub
        self._join = tuple(tuple(row) for row in join_table)

        if bottom is None:
            raise StructureError("missing bottom")
        self._bottom = self.index(bottom)
        if down[self._bottom] != 1 << self._bottom or up[self._bottom] != (1 << n) - 1:
            raise StructureError(f"declared bottom {bottom!r} is not below every element")

        self._covers = tuple(
            (j, i)
            for i in range(n)
            for j in sorted(below_strict_maximal(down, i))
        )
        self.star: dict[str, str] | None = None
        if star is not None:
            self.star = self._check_star_shape(star)

    def _check_star_shape(self, star: Mapping[str, str]) -> dict[str, str]:
        bottom = self.bottom
        result = {}
        for x, y in star.items():
            if x not in self._index or y not in self._index:
                raise StructureError(f"malformed star: unknown element in {x!r} -> {y!r}")
            if x == bottom or y == bottom:
                raise StructureError("malformed star: the bottom element has no star")
            result[x] = y
        missing = [x for x in self.elements if x != bottom and x not in result]
        if missing:
            raise StructureError(f"malformed star: no image for {', '.join(missing)}")
        return {x: result[x] for x in self.elements if x in result}

    # -- basic access -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __repr__(self) -> str:
        return f"SemiLattice({self.name!r}, {len(self)} elements)"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiLattice):
            return NotImplemented
        return (
            self.name == other.name
            and self.elements == other.elements
            and self._covers == other._covers
            and self._bottom == other._bottom
            and self.star == other.star
        )

    def __hash__(self) -> int:
        return hash((self.name, self.elements, self._covers))

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise StructureError(f"unknown element id {x!r} in {self.name}") from None

    @property
    def bottom(self) -> str:
        return self.elements[self._bottom]

    @property
    def bottom_index(self) -> int:
        return self._bottom

    @property
    def covers(self) -> tuple[tuple[str, str], ...]:
        """Hasse-diagram edges ``(lower, upper)`` in canonical order."""
        return tuple((self.elements[a], self.elements[b]) for a, b in self._covers)

    # index-level fast paths used by the other modules
    @property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        return self._meet

    @property
    def join_table(self) -> tuple[tuple[int | None, ...], ...]:
        return self._join

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def leq_index(self, i: int, j: int) -> bool:
        return bool(self._down[j] >> i & 1)

    def meet_indices(self, indices: Iterable[int]) -> int:
        indices = list(indices)
        if not indices:
            raise PreconditionError("the meet of an empty set is not defined")
        table = self._meet
        return reduce(lambda a, b: table[a][b], indices)

    # -- order and lattice operations -------------------------------------

    def leq(self, x: str, y: str) -> bool:
        return self.leq_index(self.index(x), self.index(y))

    def lt(self, x: str, y: str) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: str, y: str) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def meet(self, xs: Iterable[str]) -> str:
        """Greatest lower bound of a nonempty collection."""
        if isinstance(xs, str):
            raise TypeError("meet expects a collection of element ids, not a single id")
        return self.elements[self.meet_indices(self.index(x) for x in xs)]

    def compatible(self, x: str, y: str) -> bool:
        """True iff ``x`` and ``y`` have a common upper bound."""
        return bool(self._up[self.index(x)] & self._up[self.index(y)])

    def join_if_exists(self, xs: Iterable[str]) -> str | None:
        if isinstance(xs, str):
            raise TypeError("join_if_exists expects a collection of element ids")
        indices = [self.index(x) for x in xs]
        if not indices:
            raise PreconditionError("the join of an empty set is not defined")
        acc: int | None = indices[0]
        for j in indices[1:]:
            acc = self._join[acc][j]
            if acc is None:
                return None
        return self.elements[acc]

    def up_set(self, x: str, strict: bool = False) -> tuple[str, ...]:
        i = self.index(x)
        mask = self._up[i] & ~(1 << i) if strict else self._up[i]
        return tuple(self.elements[j] for j in _bits(mask))

    def down_set(self, x: str, strict: bool = False) -> tuple[str, ...]:
        i = self.index(x)
        mask = self._down[i] & ~(1 << i) if strict else self._down[i]
        return tuple(self.elements[j] for j in _bits(mask))

    def upper_covers(self, x: str) -> tuple[str, ...]:
        i = self.index(x)
        return tuple(self.elements[b] for a, b in self._covers if a == i)

    def lower_covers(self, x: str) -> tuple[str, ...]:
        i = self.index(x)
        return tuple(self.elements[a] for a, b in self._covers if b == i)

    def maximal_elements(self) -> tuple[str, ...]:
        return tuple(x for i, x in enumerate(self.elements) if self._up[i] == 1 << i)

    def meet_irreducibles(self) -> tuple[str, ...]:
        """Elements x such that x = meet(S) with S nonempty forces x in S.

        A nonempty S with meet x avoiding x lies in the strict up-set of x, so
        x is reducible exactly when its strict up-set is nonempty and meets to x.
        """
        result = []
        for i, x in enumerate(self.elements):
            above = self._up[i] & ~(1 << i)
            if not above or self.meet_indices(_bits(above)) != i:
                result.append(x)
        return tuple(result)

    def with_star(self, star: Mapping[str, str] | None, name: str | None = None) -> "SemiLattice":
        return SemiLattice(name or self.name, self.elements, self.covers, self.bottom, star)


def below_strict_maximal(down: Sequence[int], i: int) -> list[int]:
    """Lower covers of ``i``: maximal elements of its strict down-set."""
    strict = down[i] & ~(1 << i)
    return [j for j in _bits(strict) if not any(k != j and down[k] >> j & 1 for k in _bits(strict))]


# -- classifiers --------------------------------------------------------------


def _classifier_cap(lat: SemiLattice) -> None:
    check_cap("classifier", len(lat), f"classifying {lat.name}")


def pure_states(lat: SemiLattice) -> tuple[str, ...]:
    """Maximal elements; these are the pure states whenever the space has a pure description."""
    return lat.maximal_elements()


def pure_above(lat: SemiLattice, x: str) -> tuple[str, ...]:
    return tuple(p for p in lat.maximal_elements() if lat.leq(x, p))


def has_pure_description(lat: SemiLattice) -> bool:
    _classifier_cap(lat)
    if set(lat.meet_irreducibles()) != set(lat.maximal_elements()):
        return False
    return all(lat.meet(pure_above(lat, x)) == x for x in lat.elements)


def _require_pure_description(lat: SemiLattice, what: str) -> None:
    if not has_pure_description(lat):
        raise PreconditionError(f"{what} requires a space with a pure description; {lat.name} has none")


def is_simplex(lat: SemiLattice) -> Verdict:
    """Every state is the meet of exactly one set of pure states.

    On failure the witness is ``(state, decomposition_1, decomposition_2)``.
    """
    _require_pure_description(lat, "is_simplex")
    for x in lat.elements:
        above = pure_above(lat, x)
        # meet(above) == x, so uniqueness fails iff dropping one pure state keeps the meet
        if len(above) > 1 and any(
            lat.meet(above[:k] + above[k + 1 :]) == x for k in range(len(above))
        ):
            return Verdict(False, (x, *_two_decompositions(lat, x, above)))
    return Verdict(True)


def _two_decompositions(lat: SemiLattice, x: str, above: tuple[str, ...]):
    if len(above) <= 16:
        found = []
        for size in range(1, len(above) + 1):
            for subset in combinations(above, size):
                if lat.meet(subset) == x:
                    found.append(frozenset(subset))
                    if len(found) == 2:
                        return found
    for k in range(len(above)):
        rest = above[:k] + above[k + 1 :]
        if lat.meet(rest) == x:
            return [frozenset(rest), frozenset(above)]
    raise AssertionError("unreachable: non-unique decomposition without a witness")


def distributivity_fails_at(lat: SemiLattice, x: str, x1: str, x2: str) -> bool:
    """True iff the triple violates the distributivity condition (requires x != x1, x2)."""
    if x in (x1, x2) or not lat.leq(lat.meet([x1, x2]), x):
        return False
    i = lat.index(x)
    ups1 = list(_bits(lat.up_mask(lat.index(x1))))
    ups2 = list(_bits(lat.up_mask(lat.index(x2))))
    table = lat.meet_table
    return not any(table[a][b] == i for a in ups1 for b in ups2)


def is_distributive(lat: SemiLattice) -> Verdict:
    """Literal check: x != x1, x2 and x1 ⊓ x2 ⊑ x imply x = y1 ⊓ y2 for some y1 ⊒ x1, y2 ⊒ x2.

    The witness of a failure is the triple ``(x, x1, x2)``.
    """
    _classifier_cap(lat)
    for x in lat.elements:
        for x1 in lat.elements:
            for x2 in lat.elements:
                if distributivity_fails_at(lat, x, x1, x2):
                    return Verdict(False, (x, x1, x2))
    return Verdict(True)


def non_simplex_witness(lat: SemiLattice) -> tuple[str, str, str] | None:
    """A triple (x1, x2, x3) with x1 ∥ x2, x3 ⊒ x1 ⊓ x2 and x3 incompatible with both."""
    _require_pure_description(lat, "non_simplex_witness")
    for x1 in lat.elements:
        for x2 in lat.elements:
            if lat.comparable(x1, x2):
                continue
            low = lat.meet([x1, x2])
            for x3 in lat.up_set(low):
                if not lat.compatible(x3, x1) and not lat.compatible(x3, x2):
                    return (x1, x2, x3)
    return None


def quasi_antipodal(lat: SemiLattice, x: str, y: str) -> bool:
    if lat.compatible(x, y):
        return False
    return all(lat.compatible(x, z) for z in lat.down_set(y, strict=True)) and all(
        lat.compatible(y, z) for z in lat.down_set(x, strict=True)
    )


@dataclass(frozen=True)
class StarReport:
    violations: tuple[tuple[str, tuple[str, ...]], ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid


def validate_star(lat: SemiLattice, star: Mapping[str, str] | None = None) -> StarReport:
    """Check involution, order reversal and quasi-antipodality of a star map."""
    star = lat.star if star is None else star
    if star is None:
        raise PreconditionError(f"{lat.name} carries no star map")
    _classifier_cap(lat)
    nonbottom = [x for x in lat.elements if x != lat.bottom]
    violations: list[tuple[str, tuple[str, ...]]] = []
    for x in nonbottom:
        if x not in star or star[x] not in lat or star[x] == lat.bottom:
            violations.append(("total", (x,)))
    if violations:
        return StarReport(tuple(violations))
    for x in nonbottom:
        if star[star[x]] != x:
            violations.append(("involutive", (x, star[x], star[star[x]])))
    for x in nonbottom:
        for y in nonbottom:
            if lat.leq(x, y) and not lat.leq(star[y], star[x]):
                violations.append(("order-reversing", (x, y)))
    for x in nonbottom:
        if not quasi_antipodal(lat, x, star[x]):
            violations.append(("quasi-antipodal", (x, star[x])))
    return StarReport(tuple(violations))


def canonical_star(lat: SemiLattice) -> dict[str, str]:
    """x ↦ meet of the pure states not above x; defined on simplex spaces."""
    if not is_simplex(lat):
        raise PreconditionError(f"canonical_star requires a simplex; {lat.name} is not one")
    pure = lat.maximal_elements()
    star = {}
    for x in lat.elements:
        if x == lat.bottom:
            continue
        others = [p for p in pure if not lat.leq(x, p)]
        star[x] = lat.meet(others)
    return star


def find_stars(lat: SemiLattice) -> list[dict[str, str]]:
    """All valid star maps, found by searching over involutions of the non-bottom elements."""
    _classifier_cap(lat)
    nonbottom = [x for x in lat.elements if x != lat.bottom]
    # a valid star pairs x only with a quasi-antipodal partner (never with itself)
    partners = {x: [y for y in nonbottom if quasi_antipodal(lat, x, y)] for x in nonbottom}
    found = []

    def extend(star: dict[str, str]) -> None:
        free = [x for x in nonbottom if x not in star]
        if not free:
            if validate_star(lat, star).valid:
                found.append({x: star[x] for x in nonbottom})
            return
        x = free[0]
        for y in partners[x]:
            if y in star:
                continue
            star[x], star[y] = y, x
            extend(star)
            del star[x], star[y]

    extend({})
    return found
