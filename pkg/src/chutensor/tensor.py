"""Pure tensors and the minimal, maximal and regular tensor products.

Tables are ``numpy`` arrays of BoolVal codes indexed by (effect of A, effect of B).
A minimal-tensor element is represented canonically by its Galois-closed set
of state pairs; :func:`omega` turns any nonempty pair set into its table.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .boolean import BULLET_TABLE, BoolVal, bullet
from .caps import check_cap
from .closure import indices_of, mask_of, next_closure
from .effects import ChuSpace, Effect, max_effects, state_from_effect_predicate
from .errors import ConsistencyError, PreconditionError
from .lattice import SemiLattice, Verdict, is_simplex, has_pure_description, validate_star

__all__ = [
    "bullet",
    "TensorProduct",
    "TensorTable",
    "product",
    "pure_tensor",
    "omega",
    "table_meet",
    "table_leq",
    "galois_closure",
    "minimal_leq_criterion",
    "minimal_leq",
    "is_minimal_member",
    "is_maximal_member",
    "is_regular_member",
    "enumerate_minimal",
    "minimal_tables",
    "enumerate_maximal",
    "enumerate_regular",
    "iter_minimal",
    "iter_maximal",
    "marginal_eta",
    "marginal_lambda",
    "sup_minimal",
    "sigma_witness",
]

_BULLET = np.array(BULLET_TABLE, dtype=np.uint8)
Pair = tuple[str, str]


def _vmeet(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.where(x == y, x, 0).astype(np.uint8)


def _vleq(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return (x == 0) | (x == y)


def _meet_triples(space: ChuSpace) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays (i, j, k) over all pairs i < j with effect meet k."""
    meet = space.meet_index
    n = len(space)
    triples = [(i, j, meet[i][j]) for i in range(n) for j in range(i + 1, n)]
    if any(k < 0 for _, _, k in triples):
        raise PreconditionError(f"{space!r} is not closed under effect meets")
    if not triples:
        empty = np.zeros(0, dtype=np.intp)
        return empty, empty, empty
    i, j, k = (np.array(col, dtype=np.intp) for col in zip(*triples))
    return i, j, k


class TensorProduct:
    """Shared data for tables over one pair of Chu spaces."""

    def __init__(self, chu_a: ChuSpace, chu_b: ChuSpace):
        self.chu_a = chu_a
        self.chu_b = chu_b
        self.states_a = chu_a.states
        self.states_b = chu_b.states
        self.pairs: tuple[Pair, ...] = tuple(
            (x, y) for x in self.states_a.elements for y in self.states_b.elements
        )
        self._pair_index = {p: k for k, p in enumerate(self.pairs)}
        self.shape = (len(chu_a), len(chu_b))

    def __repr__(self) -> str:
        return f"TensorProduct({self.chu_a!r}, {self.chu_b!r})"

    def pair_index(self, pair: Pair) -> int:
        x, y = pair
        self.states_a.index(x)
        self.states_b.index(y)
        return self._pair_index[(x, y)]

    def pair_indices(self, pairs: Iterable[Pair]) -> list[int]:
        return sorted({self.pair_index(p) for p in pairs})

    @cached_property
    def pure_stack(self) -> np.ndarray:
        """All pure tensors, shape (pairs, effects_A, effects_B), in pair order."""
        ea = self.chu_a.eval_matrix.T  # states_A x effects_A
        eb = self.chu_b.eval_matrix.T
        stack = _BULLET[ea[:, None, :, None], eb[None, :, None, :]]
        stack = stack.reshape(len(self.pairs), *self.shape)
        stack.setflags(write=False)
        return stack

    @cached_property
    def meet_triples_a(self):
        return _meet_triples(self.chu_a)

    @cached_property
    def meet_triples_b(self):
        return _meet_triples(self.chu_b)

    def table(self, cells) -> "TensorTable":
        return TensorTable(self, cells)

    def omega_cells(self, indices: Sequence[int]) -> np.ndarray:
        if len(indices) == 0:
            raise PreconditionError("Ω of an empty pair set is not defined")
        chosen = self.pure_stack[list(indices)]
        first = chosen[0]
        same = np.all(chosen == first, axis=0)
        return np.where(same, first, 0).astype(np.uint8)

    def closure_vector(self, cells: np.ndarray) -> np.ndarray:
        """Boolean vector over pairs: which pure tensors lie above ``cells``."""
        return np.all(_vleq(cells[None, :, :], self.pure_stack), axis=(1, 2))

    def closure_mask(self, mask: int) -> int:
        if mask == 0:
            return 0
        vec = self.closure_vector(self.omega_cells(indices_of(mask)))
        return mask_of(np.flatnonzero(vec).tolist())

    def pairs_of(self, indices: Iterable[int]) -> frozenset[Pair]:
        return frozenset(self.pairs[k] for k in indices)

    def sorted_pairs(self, pairs: Iterable[Pair]) -> list[Pair]:
        return sorted(pairs, key=self.pair_index)


@lru_cache(maxsize=128)
def product(chu_a: ChuSpace, chu_b: ChuSpace) -> TensorProduct:
    """The (cached) tensor context for a pair of Chu spaces."""
    return TensorProduct(chu_a, chu_b)


class TensorTable:
    """An immutable table Effect_A × Effect_B → BoolVal."""

    __slots__ = ("ctx", "cells", "_hash")

    def __init__(self, ctx: TensorProduct, cells):
        arr = np.array(cells, dtype=np.uint8)
        if arr.shape != ctx.shape:
            raise PreconditionError(f"table shape {arr.shape} does not match {ctx.shape}")
        if arr.size and arr.max() > 2:
            raise PreconditionError("table cells must be BoolVal codes 0, 1 or 2")
        arr.setflags(write=False)
        self.ctx = ctx
        self.cells = arr
        self._hash = hash(arr.tobytes())

    @property
    def chu_a(self) -> ChuSpace:
        return self.ctx.chu_a

    @property
    def chu_b(self) -> ChuSpace:
        return self.ctx.chu_b

    def cell(self, e: Effect, m: Effect) -> BoolVal:
        return BoolVal(int(self.cells[self.chu_a.index(e), self.chu_b.index(m)]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorTable):
            return NotImplemented
        return (
            self.chu_a is other.chu_a
            and self.chu_b is other.chu_b
            and np.array_equal(self.cells, other.cells)
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"TensorTable({self.chu_a.states.name}⊗{self.chu_b.states.name})"

    def rows(self) -> list[list[str]]:
        """Cells rendered as ``Y``/``N``/``⊥`` strings, one list per effect of A."""
        symbols = ("⊥", "Y", "N")
        return [[symbols[v] for v in row] for row in self.cells.tolist()]

    def to_dict(self) -> dict:
        return {
            "effects_a": [str(e) for e in self.chu_a.effects],
            "effects_b": [str(e) for e in self.chu_b.effects],
            "cells": [" ".join(r) for r in self.rows()],
        }


def _same_product(tables: Sequence[TensorTable]) -> TensorProduct:
    if not tables:
        raise PreconditionError("expected at least one table")
    ctx = tables[0].ctx
    for t in tables[1:]:
        if t.chu_a is not ctx.chu_a or t.chu_b is not ctx.chu_b:
            raise PreconditionError("tables live over different Chu space pairs")
    return ctx


# -- pure tensors and Ω -------------------------------------------------------


def pure_tensor(chu_a: ChuSpace, chu_b: ChuSpace, state_a: str, state_b: str) -> TensorTable:
    ctx = product(chu_a, chu_b)
    return TensorTable(ctx, ctx.pure_stack[ctx.pair_index((state_a, state_b))])


def omega(chu_a: ChuSpace, chu_b: ChuSpace, pairs: Iterable[Pair]) -> TensorTable:
    """Pointwise meet of the pure tensors of a nonempty pair set."""
    ctx = product(chu_a, chu_b)
    return TensorTable(ctx, ctx.omega_cells(ctx.pair_indices(pairs)))


def table_meet(tables: Iterable[TensorTable]) -> TensorTable:
    tables = list(tables)
    ctx = _same_product(tables)
    acc = tables[0].cells
    for t in tables[1:]:
        acc = _vmeet(acc, t.cells)
    return TensorTable(ctx, acc)


def table_leq(phi: TensorTable, psi: TensorTable) -> bool:
    _same_product([phi, psi])
    return bool(np.all(_vleq(phi.cells, psi.cells)))


def galois_closure(phi: TensorTable) -> frozenset[Pair]:
    """All state pairs whose pure tensor lies above ``phi``."""
    ctx = phi.ctx
    return ctx.pairs_of(np.flatnonzero(ctx.closure_vector(phi.cells)).tolist())


# -- the order of the minimal tensor product ---------------------------------


def minimal_leq_criterion(
    lat_a: SemiLattice, lat_b: SemiLattice, pairs: Iterable[Pair], target: Pair
) -> bool:
    """Decide Ω(pairs) ⊑ ι(target) from the lattice structure alone.

    Both full meets must lie below the target, and for every proper nonempty
    K of the index set either the K-meet of first components lies below the
    first target or the meet of the remaining second components lies below
    the second target.
    """
    pairs = list(dict.fromkeys(pairs))
    if not pairs:
        raise PreconditionError("the pair set must be nonempty")
    if len(pairs) > 20:
        warnings.warn(
            f"minimal_leq_criterion: {len(pairs)} pairs means 2^{len(pairs)} subsets",
            RuntimeWarning,
            stacklevel=2,
        )
    ta, tb = lat_a.index(target[0]), lat_b.index(target[1])
    firsts = [lat_a.index(p[0]) for p in pairs]
    seconds = [lat_b.index(p[1]) for p in pairs]
    if not lat_a.leq_index(lat_a.meet_indices(firsts), ta):
        return False
    if not lat_b.leq_index(lat_b.meet_indices(seconds), tb):
        return False
    n = len(pairs)
    full = (1 << n) - 1
    for k in range(1, full):
        inside = [firsts[i] for i in range(n) if k >> i & 1]
        outside = [seconds[i] for i in range(n) if not k >> i & 1]
        if lat_a.leq_index(lat_a.meet_indices(inside), ta):
            continue
        if lat_b.leq_index(lat_b.meet_indices(outside), tb):
            continue
        return False
    return True


def minimal_leq(lat_a: SemiLattice, lat_b: SemiLattice, left: Iterable[Pair], right: Iterable[Pair]) -> bool:
    """Ω(left) ⊑ Ω(right), decided pair by pair with :func:`minimal_leq_criterion`."""
    left = list(left)
    right = list(right)
    if not left or not right:
        raise PreconditionError("pair sets must be nonempty")
    return all(minimal_leq_criterion(lat_a, lat_b, left, p) for p in right)


def is_minimal_member(phi: TensorTable) -> Verdict:
    """Φ lies in the minimal tensor product iff Ω of its Galois closure gives Φ back."""
    ctx = phi.ctx
    closed = np.flatnonzero(ctx.closure_vector(phi.cells)).tolist()
    if not closed:
        return Verdict(False, "no pure tensor lies above the table")
    if not np.array_equal(ctx.omega_cells(closed), phi.cells):
        return Verdict(False, "Ω of the Galois closure is strictly above the table")
    return Verdict(True, ctx.pairs_of(closed))


# -- maximal and regular membership -----------------------------------------


def _bilinear_failure(ctx: TensorProduct, cells: np.ndarray) -> tuple | None:
    ia, ja, ka = ctx.meet_triples_a
    bad = np.flatnonzero(np.any(cells[ka, :] != _vmeet(cells[ia, :], cells[ja, :]), axis=1))
    if bad.size:
        t = bad[0]
        return ("bilinear-A", str(ctx.chu_a.effects[ia[t]]), str(ctx.chu_a.effects[ja[t]]))
    ib, jb, kb = ctx.meet_triples_b
    bad = np.flatnonzero(np.any(cells[:, kb] != _vmeet(cells[:, ib], cells[:, jb]), axis=0))
    if bad.size:
        t = bad[0]
        return ("bilinear-B", str(ctx.chu_b.effects[ib[t]]), str(ctx.chu_b.effects[jb[t]]))
    return None


_BAR = np.array((0, 2, 1), dtype=np.uint8)


def is_maximal_member(phi: TensorTable) -> Verdict:
    """Bilinearity over every binary effect meet plus the three quotient conditions."""
    ctx = phi.ctx
    cells = phi.cells
    ya, yb = ctx.chu_a.y_index, ctx.chu_b.y_index
    if cells[ya, yb] != BoolVal.Y:
        return Verdict(False, ("Y-Y", str(ctx.chu_a.y_effect), str(ctx.chu_b.y_effect)))
    bar_a = np.array(ctx.chu_a.bar_index, dtype=np.intp)
    bar_b = np.array(ctx.chu_b.bar_index, dtype=np.intp)
    if (bar_a < 0).any() or (bar_b < 0).any():
        raise PreconditionError("effect spaces must be closed under bar")
    bad = np.flatnonzero(cells[bar_a, yb] != _BAR[cells[:, yb]])
    if bad.size:
        return Verdict(False, ("bar-A", str(ctx.chu_a.effects[bad[0]])))
    bad = np.flatnonzero(cells[ya, bar_b] != _BAR[cells[ya, :]])
    if bad.size:
        return Verdict(False, ("bar-B", str(ctx.chu_b.effects[bad[0]])))
    failure = _bilinear_failure(ctx, cells)
    if failure:
        return Verdict(False, failure)
    return Verdict(True)


def _regular_failure(ctx: TensorProduct, cells: np.ndarray) -> tuple | None:
    chu_a, chu_b = ctx.chu_a, ctx.chu_b
    ya, yb = chu_a.y_index, chu_b.y_index
    nya, nyb = chu_a.ybar_index, chu_b.ybar_index
    if not (np.all(cells[:, nyb] == 2) and np.all(cells[nya, :] == 2)):
        return ("N-on-Ybar",)
    allowed_flip = {(1, 2), (2, 1), (0, 0)}
    allowed_disjoint = {(0, 2), (2, 0), (0, 0)}
    bar_a, bar_b = chu_a.bar_index, chu_b.bar_index
    disjoint_a = _disjoint_pairs(chu_a)
    disjoint_b = _disjoint_pairs(chu_b)
    for e in range(len(chu_a)):
        marginal = cells[e, yb]
        row = cells[e].tolist()
        if marginal == 1:
            for m in range(len(chu_b)):
                if (row[m], row[bar_b[m]]) not in allowed_flip:
                    return ("flip-A", str(chu_a.effects[e]), str(chu_b.effects[m]))
        elif marginal == 0:
            for m, m2 in disjoint_b:
                if (row[m], row[m2]) not in allowed_disjoint:
                    return ("disjoint-A", str(chu_a.effects[e]), str(chu_b.effects[m]), str(chu_b.effects[m2]))
    for m in range(len(chu_b)):
        marginal = cells[ya, m]
        col = cells[:, m].tolist()
        if marginal == 1:
            for e in range(len(chu_a)):
                if (col[e], col[bar_a[e]]) not in allowed_flip:
                    return ("flip-B", str(chu_b.effects[m]), str(chu_a.effects[e]))
        elif marginal == 0:
            for e, e2 in disjoint_a:
                if (col[e], col[e2]) not in allowed_disjoint:
                    return ("disjoint-B", str(chu_b.effects[m]), str(chu_a.effects[e]), str(chu_a.effects[e2]))
    return None


def _disjoint_pairs(space: ChuSpace) -> list[tuple[int, int]]:
    bottom = space.bottom_index
    meet = space.meet_index
    n = len(space)
    return [(i, j) for i in range(n) for j in range(n) if meet[i][j] == bottom]


def is_regular_member(phi: TensorTable) -> Verdict:
    maximal = is_maximal_member(phi)
    if not maximal:
        raise PreconditionError(f"is_regular_member needs a maximal member; failed {maximal.witness}")
    failure = _regular_failure(phi.ctx, phi.cells)
    return Verdict(failure is None, failure)


# -- enumeration -------------------------------------------------------------


def enumerate_minimal(chu_a: ChuSpace, chu_b: ChuSpace) -> list[frozenset[Pair]]:
    """Every element of the minimal tensor product as its Galois-closed pair set.

    Results come in lectic order of the pair order (states of A major).
    """
    return list(iter_minimal(chu_a, chu_b))


def minimal_tables(chu_a: ChuSpace, chu_b: ChuSpace) -> list[TensorTable]:
    return [omega(chu_a, chu_b, pairs) for pairs in enumerate_minimal(chu_a, chu_b)]


class _Homs:
    """Meet-preserving maps Effect_A → BoolVal, each a pair (yes, no) of up-closed disjoint cones."""

    def __init__(self, space: ChuSpace):
        n = len(space)
        leq = space.leq_matrix
        up = [sum(1 << j for j in range(n) if leq[i][j]) for i in range(n)]
        rows = []
        for y in [None, *range(n)]:
            for no in [None, *range(n)]:
                if y is not None and no is not None and up[y] & up[no]:
                    continue
                row = [0] * n
                for j in range(n):
                    if y is not None and up[y] >> j & 1:
                        row[j] = 1
                    elif no is not None and up[no] >> j & 1:
                        row[j] = 2
                rows.append(tuple(row))
        rows = list(dict.fromkeys(rows))
        self.rows = np.array(rows, dtype=np.uint8)
        index = {r: k for k, r in enumerate(rows)}
        self.index = index
        h = len(rows)
        meet = np.empty((h, h), dtype=np.intp)
        for a in range(h):
            merged = np.where(self.rows[a] == self.rows, self.rows, 0)
            for b, r in enumerate(merged):
                k = index.get(tuple(r.tolist()))
                if k is None:
                    raise ConsistencyError("meet-preserving maps are not closed under meets")
                meet[a, b] = k
        self.meet = meet.tolist()
        self.leq = np.all(_vleq(self.rows[:, None, :], self.rows[None, :, :]), axis=2).tolist()


def _maximal_cells(ctx: TensorProduct, regular: bool = False) -> Iterator[np.ndarray]:
    """All maximal-tensor tables, as meet-preserving maps from Effect_B into the maps on Effect_A.

    Each table is determined by its columns; the Y_B column is the evaluation
    column of some state of A and the Y_A row is that of some state of B.
    Columns are chosen top-down and forced at elements with several upper
    covers, with meets and order propagated through a trail.  With
    ``regular`` the regular-product conditions prune the search as well.
    """
    chu_a, chu_b = ctx.chu_a, ctx.chu_b
    homs = _Homs(chu_a)
    hmeet, hleq, hrows = homs.meet, homs.leq, homs.rows
    n_homs = len(hrows)
    ya, nya = chu_a.y_index, chu_a.ybar_index
    nb = len(chu_b)
    leq_b = chu_b.leq_matrix
    meet_b = chu_b.meet_index
    if any(k < 0 for r in meet_b for k in r):
        raise PreconditionError(f"{chu_b!r} is not closed under effect meets")
    yb, nyb, bot_b = chu_b.y_index, chu_b.ybar_index, chu_b.bottom_index
    bar_b = chu_b.bar_index
    up_size = [sum(leq_b[i]) for i in range(nb)]
    order = [yb, nyb] + sorted((i for i in range(nb) if i not in (yb, nyb)), key=lambda i: (up_size[i], i))
    upper = [
        [j for j in range(nb) if j != i and leq_b[i][j] and not any(
            k not in (i, j) and leq_b[i][k] and leq_b[k][j] for k in range(nb))]
        for i in range(nb)
    ]
    eval_a = chu_a.eval_matrix
    eval_b = chu_b.eval_matrix
    ya_column = hrows[:, ya].tolist()

    if regular:
        bar_a = np.array(chu_a.bar_index, dtype=np.intp)
        all_n = np.all(hrows == 2, axis=1)
        # maps usable in a column where the Y_A row reads Y, resp. ⊥
        equivariant = np.all(hrows[:, bar_a] == _BAR[hrows], axis=1)
        da = np.array(_disjoint_pairs(chu_a), dtype=np.intp).reshape(-1, 2)
        first, second = hrows[:, da[:, 0]], hrows[:, da[:, 1]]
        separated = np.all((first != 1) & (second != 1) & ~((first == 2) & (second == 2)), axis=1)
        n_on_ybar = hrows[:, nya] == 2

    for sa in range(len(chu_a.states)):
        column = eval_a[:, sa]
        top = homs.index[tuple(column.tolist())]
        if regular:
            yes_rows = np.flatnonzero(column == 1)
            bot_rows = np.flatnonzero(column == 0)
            hy = hrows[:, yes_rows]
            flip = np.all(hy[None, :, :] == _BAR[hy][:, None, :], axis=2).tolist()
            hb = hrows[:, bot_rows]
            p, q = hb[:, None, :], hb[None, :, :]
            disjoint = np.all((p != 1) & (q != 1) & ~((p == 2) & (q == 2)), axis=2).tolist()
        for sb in range(len(chu_b.states)):
            target = eval_b[:, sb].tolist()
            allowed = []
            for m in range(nb):
                ok = np.array(ya_column) == target[m]
                if regular:
                    ok &= n_on_ybar
                    if m == nyb:
                        ok &= all_n
                    if target[m] == 1:
                        ok &= equivariant
                    elif target[m] == 0:
                        ok &= separated
                    if bar_b[m] == m:
                        ok &= np.diag(np.array(flip, dtype=bool))
                    if m == bot_b:
                        ok &= np.diag(np.array(disjoint, dtype=bool))
                allowed.append(set(np.flatnonzero(ok).tolist()))
            value = [-1] * nb
            trail: list[int] = []

            def assign(x: int, v: int) -> bool:
                queue = [(x, v)]
                while queue:
                    x, v = queue.pop()
                    if value[x] >= 0:
                        if value[x] != v:
                            return False
                        continue
                    if v not in allowed[x]:
                        return False
                    value[x] = v
                    trail.append(x)
                    for y in range(nb):
                        w = value[y]
                        if w < 0 or y == x:
                            continue
                        if regular:
                            if y == bar_b[x] and not flip[v][w]:
                                return False
                            if meet_b[x][y] == bot_b and not disjoint[v][w]:
                                return False
                        if leq_b[x][y]:
                            if not hleq[v][w]:
                                return False
                        elif leq_b[y][x]:
                            if not hleq[w][v]:
                                return False
                        else:
                            queue.append((meet_b[x][y], hmeet[v][w]))
                return True

            def undo(mark: int) -> None:
                while len(trail) > mark:
                    value[trail.pop()] = -1

            def search(pos: int) -> Iterator[np.ndarray]:
                while pos < nb and value[order[pos]] >= 0:
                    pos += 1
                if pos == nb:
                    yield hrows[value].T.copy()
                    return
                x = order[pos]
                covers = upper[x]
                if len(covers) >= 2:
                    candidates = [_fold_meet(hmeet, [value[c] for c in covers])]
                else:
                    candidates = [
                        h for h in range(n_homs)
                        if h in allowed[x] and all(hleq[h][value[c]] for c in covers)
                    ]
                for h in candidates:
                    mark = len(trail)
                    if assign(x, h):
                        yield from search(pos + 1)
                    undo(mark)

            if assign(yb, top):
                yield from search(0)


def _fold_meet(hmeet, values: list[int]) -> int:
    acc = values[0]
    for v in values[1:]:
        acc = hmeet[acc][v]
    return acc


def iter_maximal(chu_a: ChuSpace, chu_b: ChuSpace, regular: bool = False) -> Iterator[TensorTable]:
    """Lazily yield maximal tables (only the regular ones with ``regular``), each re-verified."""
    ctx = product(chu_a, chu_b)
    kind = "regular" if regular else "maximal"
    check_cap("maximal", max(ctx.shape), f"{kind} tensor {chu_a.states.name}⊗{chu_b.states.name}")
    for cells in _maximal_cells(ctx, regular=regular):
        table = TensorTable(ctx, cells)
        verdict = is_maximal_member(table)
        if not verdict:
            raise ConsistencyError(f"enumerated table fails maximal membership: {verdict.witness}")
        if regular and _regular_failure(ctx, cells) is not None:
            raise ConsistencyError("enumerated table fails regular membership")
        yield table


def enumerate_maximal(chu_a: ChuSpace, chu_b: ChuSpace) -> list[TensorTable]:
    """Every table satisfying bilinearity and the quotient conditions."""
    out = list(iter_maximal(chu_a, chu_b))
    if len(set(out)) != len(out):
        raise ConsistencyError("maximal enumeration produced duplicates")
    return out


def enumerate_regular(chu_a: ChuSpace, chu_b: ChuSpace) -> list[TensorTable]:
    """Maximal tables meeting the regular conditions, searched with those conditions as constraints."""
    return list(iter_maximal(chu_a, chu_b, regular=True))


def iter_minimal(chu_a: ChuSpace, chu_b: ChuSpace) -> Iterator[frozenset[Pair]]:
    ctx = product(chu_a, chu_b)
    check_cap("minimal", len(ctx.pairs), f"minimal tensor {chu_a.states.name}⊗{chu_b.states.name}")
    for mask in next_closure(len(ctx.pairs), ctx.closure_mask):
        if mask:
            yield ctx.pairs_of(indices_of(mask))


# -- marginals and suprema ---------------------------------------------------


def marginal_eta(phi: TensorTable) -> str:
    """The state of A read off the column Φ(·, Y_B)."""
    return state_from_effect_predicate(phi.chu_a, phi.cells[:, phi.chu_b.y_index].tolist())


def marginal_lambda(phi: TensorTable) -> str:
    return state_from_effect_predicate(phi.chu_b, phi.cells[phi.chu_a.y_index, :].tolist())


def sup_minimal(phi: TensorTable, psi: TensorTable) -> TensorTable | None:
    """Least upper bound inside the minimal tensor product, or ``None`` if there is none.

    Any upper bound has its Galois closure inside both closures, so Ω of the
    intersection is the least one.  When both factors are simplices the
    join-based closed form is computed as an independent check.
    """
    ctx = _same_product([phi, psi])
    for t in (phi, psi):
        if not is_minimal_member(t):
            raise PreconditionError("sup_minimal needs minimal members")
    common = ctx.closure_vector(phi.cells) & ctx.closure_vector(psi.cells)
    shared = np.flatnonzero(common).tolist()
    result = TensorTable(ctx, ctx.omega_cells(shared)) if shared else None
    lat_a, lat_b = ctx.states_a, ctx.states_b
    if _is_simplex_quiet(lat_a) and _is_simplex_quiet(lat_b):
        closed = _closed_form_sup(ctx, galois_closure(phi), galois_closure(psi))
        if closed != result:
            raise ConsistencyError("closed-form supremum disagrees with the Galois computation")
    return result


def _is_simplex_quiet(lat: SemiLattice) -> bool:
    return has_pure_description(lat) and bool(is_simplex(lat))


def _closed_form_sup(ctx: TensorProduct, left: Iterable[Pair], right: Iterable[Pair]) -> TensorTable | None:
    lat_a, lat_b = ctx.states_a, ctx.states_b
    joined = set()
    for sa, sb in left:
        for ta, tb in right:
            ja = lat_a.join_if_exists([sa, ta])
            jb = lat_b.join_if_exists([sb, tb])
            if ja is not None and jb is not None:
                joined.add((ja, jb))
    if not joined:
        return None
    return TensorTable(ctx, ctx.omega_cells(ctx.pair_indices(joined)))


# -- the separating witness ---------------------------------------------------


@dataclass(frozen=True)
class _PureCell:
    row: Effect
    col: Effect


def sigma_witness(
    chu_a: ChuSpace, chu_b: ChuSpace, s1: str, s2: str, t1: str, t2: str
) -> TensorTable:
    """A regular table over two starred spaces that is not in the minimal product.

    The table is prescribed on pure effects and extended to every effect pair
    by taking meets over the pure effects above each side.
    """
    for space, x1, x2 in ((chu_a, s1, s2), (chu_b, t1, t2)):
        lat = space.states
        if space.kind != "reduced" or lat.star is None:
            raise PreconditionError("sigma_witness needs reduced effect spaces on starred semilattices")
        if not validate_star(lat).valid:
            raise PreconditionError(f"invalid star on {lat.name}")
        pure = lat.maximal_elements()
        if x1 not in pure or x2 not in pure:
            raise PreconditionError(f"{x1} and {x2} must be pure states of {lat.name}")
        if x1 == x2:
            raise PreconditionError("the two pure states must differ")
        if lat.leq(lat.star[x1], x2):
            raise PreconditionError(f"{lat.star[x1]} ⊑ {x2}; the witness needs it not to hold")

    star_a, star_b = chu_a.states.star, chu_b.states.star
    pure_a, pure_b = max_effects(chu_a), max_effects(chu_b)
    negatives = {
        _PureCell(Effect(s1, star_a[s1]), Effect(t1, star_b[t1])),
        _PureCell(Effect(star_a[s1], s1), Effect(star_b[t2], t2)),
        _PureCell(Effect(star_a[s2], s2), Effect(star_b[t1], t1)),
    }

    def pure_value(e: Effect, m: Effect) -> int:
        if e == chu_a.y_effect and m == chu_b.y_effect:
            return 1
        if e == chu_a.ybar_effect or m == chu_b.ybar_effect:
            return 2
        if e == chu_a.y_effect or m == chu_b.y_effect:
            return 0
        return 2 if _PureCell(e, m) in negatives else 0

    above_a = _pure_cover(chu_a, pure_a)
    above_b = _pure_cover(chu_b, pure_b)
    ctx = product(chu_a, chu_b)
    base = np.array([[pure_value(e, m) for m in pure_b] for e in pure_a], dtype=np.uint8)
    cells = np.zeros(ctx.shape, dtype=np.uint8)
    for i, ups_a in enumerate(above_a):
        for j, ups_b in enumerate(above_b):
            block = base[np.ix_(ups_a, ups_b)]
            first = block.flat[0]
            cells[i, j] = first if np.all(block == first) else 0
    return TensorTable(ctx, cells)


def _pure_cover(space: ChuSpace, pure: Sequence[Effect]) -> list[list[int]]:
    """For each effect, the positions (in ``pure``) of the pure effects above it."""
    leq = space.leq_matrix
    pure_idx = [space.index(p) for p in pure]
    result = []
    for i, e in enumerate(space.effects):
        ups = [k for k, p in enumerate(pure_idx) if leq[i][p]]
        rows = np.array([space.rows[pure_idx[k]] for k in ups], dtype=np.uint8)
        merged = rows[0]
        for r in rows[1:]:
            merged = _vmeet(merged, r)
        if merged.tolist() != list(space.rows[i]):
            raise ConsistencyError(f"{e} is not the meet of the pure effects above it")
        result.append(ups)
    return result


def pure_pairs_above(ctx: TensorProduct, phi: TensorTable) -> list[Pair]:
    """Pairs of pure states whose pure tensor lies above ``phi``."""
    pa = set(ctx.states_a.maximal_elements())
    pb = set(ctx.states_b.maximal_elements())
    return [p for p in ctx.sorted_pairs(galois_closure(phi)) if p[0] in pa and p[1] in pb]
