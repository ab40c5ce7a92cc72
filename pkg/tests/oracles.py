"""Brute-force reference implementations used to check the library.

Everything here works straight from definitions, with no pruning and no
shared code paths beyond the evaluation tables themselves.
"""

from __future__ import annotations

from itertools import chain, combinations, product

from chutensor.boolean import BULLET_TABLE, MEET_TABLE


def order_pairs(lat):
    return {(x, y) for x in lat.elements for y in lat.elements if lat.leq(x, y)}


def meet_by_search(lat, x, y):
    """Greatest common lower bound found by scanning every element."""
    lower = [z for z in lat.elements if lat.leq(z, x) and lat.leq(z, y)]
    tops = [z for z in lower if all(lat.leq(w, z) for w in lower)]
    assert len(tops) == 1
    return tops[0]


def all_pairs(lat_a, lat_b):
    return [(x, y) for x in lat_a.elements for y in lat_b.elements]


def nonempty_subsets(items, max_size=None):
    items = list(items)
    top = len(items) if max_size is None else max_size
    return chain.from_iterable(combinations(items, k) for k in range(1, top + 1))


def pointwise_omega(chu_a, chu_b, pairs):
    """Ω computed cell by cell from evaluations, as nested tuples."""
    rows = []
    for e in chu_a.effects:
        row = []
        for m in chu_b.effects:
            acc = None
            for x, y in pairs:
                v = BULLET_TABLE[chu_a.evaluate(e, x)][chu_b.evaluate(m, y)]
                acc = v if acc is None else MEET_TABLE[acc][v]
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def pointwise_leq(t1, t2):
    return all(a == 0 or a == b for r1, r2 in zip(t1, t2) for a, b in zip(r1, r2))


def minimal_carrier(chu_a, chu_b):
    """Distinct Ω tables over every nonempty pair set."""
    return {pointwise_omega(chu_a, chu_b, s) for s in nonempty_subsets(all_pairs(chu_a.states, chu_b.states))}


def is_bifilter(lat_a, lat_b, pairs):
    pairs = set(pairs)
    for x, y in pairs:
        for x2 in lat_a.up_set(x):
            for y2 in lat_b.up_set(y):
                if (x2, y2) not in pairs:
                    return False
    for (x1, y1), (x2, y2) in product(pairs, repeat=2):
        if y1 == y2 and (lat_a.meet([x1, x2]), y1) not in pairs:
            return False
        if x1 == x2 and (x1, lat_b.meet([y1, y2])) not in pairs:
            return False
    return True


def bifilters(lat_a, lat_b):
    """Every nonempty bi-filter, by testing every subset of the product."""
    grid = all_pairs(lat_a, lat_b)
    return [frozenset(s) for s in nonempty_subsets(grid) if is_bifilter(lat_a, lat_b, s)]


def least_bifilter(all_bifilters, generators):
    containing = [f for f in all_bifilters if set(generators) <= f]
    return frozenset.intersection(*containing)


def maximal_tables(chu_a, chu_b):
    """Every table satisfying the maximal-product conditions, by cell-wise backtracking.

    Constraints are only checked once all cells they mention are filled.
    """
    na, nb = len(chu_a), len(chu_b)
    cells = [(i, j) for i in range(na) for j in range(nb)]
    ya, yb = chu_a.index(chu_a.y_effect), chu_b.index(chu_b.y_effect)
    meet_a = [[chu_a.index(chu_a.effect_meet(e, f)) for f in chu_a.effects] for e in chu_a.effects]
    meet_b = [[chu_b.index(chu_b.effect_meet(e, f)) for f in chu_b.effects] for e in chu_b.effects]
    bar_a = [chu_a.index(e.bar()) for e in chu_a.effects]
    bar_b = [chu_b.index(e.bar()) for e in chu_b.effects]
    bar = (0, 2, 1)
    constraints = []
    for i1 in range(na):
        for i2 in range(na):
            for j in range(nb):
                constraints.append(((i1, j), (i2, j), (meet_a[i1][i2], j)))
    for j1 in range(nb):
        for j2 in range(nb):
            for i in range(na):
                constraints.append(((i, j1), (i, j2), (i, meet_b[j1][j2])))
    bar_constraints = [((i, yb), (bar_a[i], yb)) for i in range(na)]
    bar_constraints += [((ya, j), (ya, bar_b[j])) for j in range(nb)]
    position = {c: k for k, c in enumerate(cells)}
    by_last = {k: [] for k in range(len(cells))}
    for c in constraints:
        by_last[max(position[p] for p in c)].append(("meet", c))
    for c in bar_constraints:
        by_last[max(position[p] for p in c)].append(("bar", c))
    value = {}
    out = []

    def ok(k):
        for kind, c in by_last[k]:
            if kind == "meet":
                a, b, m = (value[p] for p in c)
                if m != MEET_TABLE[a][b]:
                    return False
            else:
                a, b = (value[p] for p in c)
                if b != bar[a]:
                    return False
        return True

    def search(k):
        if k == len(cells):
            out.append(tuple(tuple(value[(i, j)] for j in range(nb)) for i in range(na)))
            return
        cell = cells[k]
        choices = (1,) if cell == (ya, yb) else (0, 1, 2)
        for v in choices:
            value[cell] = v
            if ok(k):
                search(k + 1)
        del value[cell]

    search(0)
    return out
