"""Chu morphisms between States/Effects spaces and their action on tensor products."""

from __future__ import annotations

from itertools import product as cartesian
from typing import Callable, Iterator, Mapping

import numpy as np

from .effects import ChuSpace, Effect, effect_from_state_predicate
from .errors import ConsistencyError, PreconditionError
from .lattice import SemiLattice, Verdict
from .tensor import TensorTable, galois_closure, is_minimal_member, omega, product

__all__ = [
    "Morphism",
    "is_morphism",
    "adjoint",
    "identity",
    "compose",
    "morphism_meet",
    "enumerate_state_maps",
    "enumerate_morphisms",
    "tensor_channel_minimal",
    "tensor_channel_regular",
]


def _lattice(space: ChuSpace | SemiLattice) -> SemiLattice:
    return space.states if isinstance(space, ChuSpace) else space


def is_morphism(
    source: ChuSpace | SemiLattice, target: ChuSpace | SemiLattice, state_map: Mapping[str, str]
) -> Verdict:
    """Whether ``state_map`` is total and preserves binary meets; the witness is a failing pair."""
    src, tgt = _lattice(source), _lattice(target)
    for x in src.elements:
        if x not in state_map:
            return Verdict(False, ("undefined", x))
        if state_map[x] not in tgt:
            return Verdict(False, ("not a target state", x, state_map[x]))
    xs = src.elements
    for i, x in enumerate(xs):
        for y in xs[i + 1 :]:
            if state_map[src.meet([x, y])] != tgt.meet([state_map[x], state_map[y]]):
                return Verdict(False, (x, y))
    return Verdict(True)


class Morphism:
    """A meet-preserving state map with its (eagerly computed) adjoint on effects."""

    def __init__(self, source: ChuSpace, target: ChuSpace, state_map: Mapping[str, str]):
        verdict = is_morphism(source, target, state_map)
        if not verdict:
            raise PreconditionError(f"not a morphism: {verdict.witness}")
        self.source = source
        self.target = target
        self.state_map: dict[str, str] = {x: state_map[x] for x in source.states.elements}
        self.adjoint_map: dict[Effect, Effect] = {m: self._pull_back(m) for m in target.effects}

    def _pull_back(self, m: Effect) -> Effect:
        row = self.target.rows[self.target.index(m)]
        tgt = self.target.states
        return effect_from_state_predicate(
            self.source, [row[tgt.index(self.state_map[x])] for x in self.source.states.elements]
        )

    def __call__(self, state: str) -> str:
        return self.state_map[state]

    def adjoint(self, m: Effect) -> Effect:
        return self.adjoint_map[m]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.state_map == other.state_map
        )

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.state_map.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}↦{v}" for k, v in self.state_map.items())
        return f"Morphism({self.source.states.name}→{self.target.states.name}: {body})"

    def duality_failure(self) -> tuple | None:
        """First (effect, state) where the duality equation fails, if any."""
        for m in self.target.effects:
            pulled = self.adjoint_map[m]
            for x in self.source.states.elements:
                if self.target.evaluate(m, self.state_map[x]) != self.source.evaluate(pulled, x):
                    return (str(m), x)
        return None

    def adjoint_is_surjective(self) -> bool:
        return set(self.adjoint_map.values()) == set(self.source.effects)

    def is_injective(self) -> bool:
        return len(set(self.state_map.values())) == len(self.state_map)


def adjoint(f: Morphism) -> dict[Effect, Effect]:
    return dict(f.adjoint_map)


def identity(space: ChuSpace) -> Morphism:
    return Morphism(space, space, {x: x for x in space.states.elements})


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f`` followed by ``g``; its adjoint is checked to be ``f*`` after ``g*``."""
    if f.target is not g.source:
        raise PreconditionError("compose: target of the first morphism is not the source of the second")
    h = Morphism(f.source, g.target, {x: g(f(x)) for x in f.source.states.elements})
    for m in g.target.effects:
        if h.adjoint(m) != f.adjoint(g.adjoint(m)):
            raise ConsistencyError(f"adjoint of a composite differs from the composite of adjoints at {m}")
    return h


def morphism_meet(f: Morphism, g: Morphism) -> Morphism:
    """Pointwise meet of state maps; its adjoint is checked to be the pointwise meet of adjoints."""
    if f.source is not g.source or f.target is not g.target:
        raise PreconditionError("morphism_meet needs morphisms with the same endpoints")
    tgt = f.target
    h = Morphism(
        f.source, tgt, {x: tgt.states.meet([f(x), g(x)]) for x in f.source.states.elements}
    )
    for m in tgt.effects:
        if h.adjoint(m) != f.source.effect_meet(f.adjoint(m), g.adjoint(m)):
            raise ConsistencyError(f"adjoint of a meet differs from the meet of adjoints at {m}")
    return h


def enumerate_state_maps(source: SemiLattice, target: SemiLattice) -> Iterator[dict[str, str]]:
    """All meet-preserving maps, by backtracking from the top with meet propagation."""
    src_meet = source.meet_table
    tgt_meet = target.meet_table
    n = len(source)
    order = sorted(range(n), key=lambda i: (bin(source.up_mask(i)).count("1"), i))
    value = [-1] * n

    def consistent(x: int) -> bool:
        v = value[x]
        for y in range(n):
            w = value[y]
            if w < 0:
                continue
            z = src_meet[x][y]
            if value[z] >= 0 and value[z] != tgt_meet[v][w]:
                return False
            # x may itself be the meet of two earlier elements
            for y2 in range(n):
                if src_meet[y][y2] == x and value[y2] >= 0 and tgt_meet[w][value[y2]] != v:
                    return False
        return True

    def search(pos: int) -> Iterator[dict[str, str]]:
        if pos == n:
            yield {source.elements[i]: target.elements[value[i]] for i in range(n)}
            return
        x = order[pos]
        for v in range(len(target)):
            value[x] = v
            if consistent(x):
                yield from search(pos + 1)
        value[x] = -1

    yield from search(0)


def enumerate_morphisms(source: ChuSpace, target: ChuSpace) -> list[Morphism]:
    return [Morphism(source, target, m) for m in enumerate_state_maps(source.states, target.states)]


def brute_force_state_maps(source: SemiLattice, target: SemiLattice) -> list[dict[str, str]]:
    """Reference enumeration over every function between the carriers."""
    out = []
    for images in cartesian(target.elements, repeat=len(source)):
        candidate = dict(zip(source.elements, images))
        if is_morphism(source, target, candidate):
            out.append(candidate)
    return out


# -- channels on bipartite products ------------------------------------------


def _irredundant(chu_a: ChuSpace, chu_b: ChuSpace, pairs: list) -> list:
    """Drop generators one at a time while Ω stays the same."""
    full = omega(chu_a, chu_b, pairs)
    kept = list(pairs)
    for p in list(pairs):
        trial = [q for q in kept if q != p]
        if trial and omega(chu_a, chu_b, trial) == full:
            kept = trial
    return kept


def tensor_channel_minimal(f: Morphism, g: Morphism) -> Callable[[TensorTable], TensorTable]:
    """Ω(U) ↦ Ω({(f σ, g τ) : (σ, τ) ∈ U}), checked to be independent of the representative U."""

    def channel(phi: TensorTable) -> TensorTable:
        if phi.chu_a is not f.source or phi.chu_b is not g.source:
            raise PreconditionError("table does not live over the sources of the two morphisms")
        if not is_minimal_member(phi):
            raise PreconditionError("tensor_channel_minimal acts on minimal members only")
        closed = sorted(galois_closure(phi), key=product(f.source, g.source).pair_index)
        small = _irredundant(f.source, g.source, closed)
        images = [
            omega(f.target, g.target, [(f(x), g(y)) for x, y in rep]) for rep in (closed, small)
        ]
        if images[0] != images[1]:
            raise ConsistencyError("minimal channel depends on the chosen representative")
        return images[0]

    return channel


def tensor_channel_regular(f: Morphism, g: Morphism) -> Callable[[TensorTable], TensorTable]:
    """Φ ↦ ((e, m) ↦ Φ(f* e, g* m))."""
    rows = np.array([f.source.index(f.adjoint(e)) for e in f.target.effects], dtype=np.intp)
    cols = np.array([g.source.index(g.adjoint(m)) for m in g.target.effects], dtype=np.intp)
    ctx = product(f.target, g.target)

    def channel(phi: TensorTable) -> TensorTable:
        if phi.chu_a is not f.source or phi.chu_b is not g.source:
            raise PreconditionError("table does not live over the sources of the two morphisms")
        return TensorTable(ctx, phi.cells[np.ix_(rows, cols)])

    return channel


def adjoint_indices(source: ChuSpace, target: ChuSpace, images: np.ndarray) -> np.ndarray:
    """Adjoint of the state map given by target-state indices, as source-effect indices.

    Fast path for exhaustive checks: each pulled-back row is looked up among
    the rows of ``source`` (rows are distinct by extensionality).
    """
    lookup = _row_lookup(source)
    pulled = target.eval_matrix[:, images]
    try:
        return np.array([lookup[r.tobytes()] for r in pulled], dtype=np.intp)
    except KeyError:
        raise PreconditionError("a pulled-back predicate is not an effect of the source") from None


_ROW_CACHE: dict[int, tuple[ChuSpace, dict[bytes, int]]] = {}


def _row_lookup(space: ChuSpace) -> dict[bytes, int]:
    cached = _ROW_CACHE.get(id(space))
    if cached is None or cached[0] is not space:
        rows = np.ascontiguousarray(space.eval_matrix)
        cached = (space, {r.tobytes(): i for i, r in enumerate(rows)})
        _ROW_CACHE[id(space)] = cached
    return cached[1]
