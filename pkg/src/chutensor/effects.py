"""States/Effects Chu spaces over the three-valued boolean domain.

An effect is a label ``l(yes, no)`` whose parts are states or ``None``
(printed ``.``).  It answers Y on states above ``yes``, N on states above
``no`` and ⊥ elsewhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .boolean import BAR_TABLE, LEQ_TABLE, MEET_TABLE, BoolVal
from .caps import check_cap
from .errors import ConsistencyError, PreconditionError, SchemaError
from .lattice import SemiLattice, has_pure_description, quasi_antipodal, validate_star


@dataclass(frozen=True)
class Effect:
    yes: str | None
    no: str | None

    def __str__(self) -> str:
        return f"l({self.yes if self.yes is not None else '.'},{self.no if self.no is not None else '.'})"

    def bar(self) -> "Effect":
        return Effect(self.no, self.yes)

    @property
    def two_sided(self) -> bool:
        return self.yes is not None and self.no is not None


_EFFECT_RE = re.compile(r"^\s*l?\s*\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)\s*$")


def parse_effect(text: str) -> Effect:
    """Parse ``l(a,b)``, ``l(a,.)``, ``(.,b)`` and the like."""
    match = _EFFECT_RE.match(text)
    if not match:
        raise SchemaError(f"not an effect literal: {text!r}")
    yes, no = (None if part in (".", "·") else part for part in match.groups())
    return Effect(yes, no)


@dataclass(frozen=True)
class ChuReport:
    violations: tuple[tuple[str, tuple], ...]
    # findings that are not failures for this kind of space
    advisories: tuple[tuple[str, tuple], ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def rules(self) -> set[str]:
        return {rule for rule, _ in self.violations}


class ChuSpace:
    """A states space, a set of effect labels over it and the evaluation table.

    The effect set is taken as given; :func:`check_chu_axioms` reports
    whether it actually forms a States/Effects Chu space.
    """

    def __init__(self, states: SemiLattice, effects: Iterable[Effect], kind: str = "custom"):
        self.states = states
        self.kind = kind
        effects = tuple(dict.fromkeys(effects))
        for e in effects:
            for part in (e.yes, e.no):
                if part is not None:
                    states.index(part)
        self.effects: tuple[Effect, ...] = effects
        self._index = {e: i for i, e in enumerate(effects)}
        self.rows: tuple[tuple[int, ...], ...] = tuple(self._compute_row(e) for e in effects)

    def _compute_row(self, e: Effect) -> tuple[int, ...]:
        lat = self.states
        yes = None if e.yes is None else lat.index(e.yes)
        no = None if e.no is None else lat.index(e.no)
        row = []
        for j in range(len(lat)):
            if yes is not None and lat.leq_index(yes, j):
                row.append(1)
            elif no is not None and lat.leq_index(no, j):
                row.append(2)
            else:
                row.append(0)
        return tuple(row)

    def __repr__(self) -> str:
        return f"ChuSpace({self.states.name!r}, {self.kind}, {len(self.effects)} effects)"

    def __len__(self) -> int:
        return len(self.effects)

    def __contains__(self, e: object) -> bool:
        return e in self._index

    def index(self, e: Effect) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise PreconditionError(f"{e} is not an effect of {self!r}") from None

    # -- distinguished effects --------------------------------------------

    @property
    def y_effect(self) -> Effect:
        return Effect(self.states.bottom, None)

    @property
    def ybar_effect(self) -> Effect:
        return Effect(None, self.states.bottom)

    @property
    def bottom_effect(self) -> Effect:
        return Effect(None, None)

    # -- evaluation and algebra on labels ---------------------------------

    def evaluate(self, e: Effect, state: str) -> BoolVal:
        return BoolVal(self.rows[self.index(e)][self.states.index(state)])

    def row(self, e: Effect) -> tuple[BoolVal, ...]:
        return tuple(BoolVal(v) for v in self.rows[self.index(e)])

    def column(self, state: str) -> dict[Effect, BoolVal]:
        j = self.states.index(state)
        return {e: BoolVal(self.rows[i][j]) for i, e in enumerate(self.effects)}

    def effect_meet(self, e1: Effect, e2: Effect) -> Effect:
        """Join the yes parts and the no parts; an incompatible or missing pair degenerates to ``.``."""
        lat = self.states

        def slot(a: str | None, b: str | None) -> str | None:
            if a is None or b is None:
                return None
            return lat.join_if_exists([a, b])

        return Effect(slot(e1.yes, e2.yes), slot(e1.no, e2.no))

    def effect_bar(self, e: Effect) -> Effect:
        return e.bar()

    def effect_leq(self, e1: Effect, e2: Effect) -> bool:
        return all(LEQ_TABLE[a][b] for a, b in zip(self.rows[self.index(e1)], self.rows[self.index(e2)]))

    # -- index-level tables used by the tensor code -----------------------

    @cached_property
    def eval_matrix(self) -> np.ndarray:
        """Array of shape (effects, states) holding BoolVal codes."""
        return np.array(self.rows, dtype=np.uint8).reshape(len(self.effects), len(self.states))

    @cached_property
    def meet_index(self) -> tuple[tuple[int, ...], ...]:
        """``meet_index[i][j]`` is the index of the meet, or -1 when it falls outside the space."""
        n = len(self.effects)
        table = [[-1] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                k = self._index.get(self.effect_meet(self.effects[i], self.effects[j]), -1)
                table[i][j] = table[j][i] = k
        return tuple(tuple(r) for r in table)

    @cached_property
    def bar_index(self) -> tuple[int, ...]:
        return tuple(self._index.get(e.bar(), -1) for e in self.effects)

    @cached_property
    def leq_matrix(self) -> tuple[tuple[bool, ...], ...]:
        rows = self.rows
        return tuple(
            tuple(all(LEQ_TABLE[a][b] for a, b in zip(r1, r2)) for r2 in rows) for r1 in rows
        )

    @property
    def y_index(self) -> int:
        return self.index(self.y_effect)

    @property
    def ybar_index(self) -> int:
        return self.index(self.ybar_effect)

    @property
    def bottom_index(self) -> int:
        return self.index(self.bottom_effect)

    def effect_lattice(self) -> SemiLattice:
        """The effects ordered pointwise, as a :class:`SemiLattice` over their printed labels."""
        names = [str(e) for e in self.effects]
        leq = self.leq_matrix
        covers = [
            (names[i], names[j])
            for i in range(len(names))
            for j in range(len(names))
            if i != j and leq[i][j]
        ]
        return SemiLattice(f"effects({self.states.name})", names, covers, str(self.bottom_effect))

    def effect_by_name(self, name: str) -> Effect:
        e = parse_effect(name)
        self.index(e)
        return e


def natural_effects(lat: SemiLattice) -> ChuSpace:
    """All two-sided labels over incompatible pairs plus every one-sided label and l(.,.)."""
    check_cap("classifier", len(lat), f"natural effects of {lat.name}")
    xs = lat.elements
    effects = [Effect(x, y) for x in xs for y in xs if not lat.compatible(x, y)]
    effects += [Effect(x, None) for x in xs]
    effects += [Effect(None, x) for x in xs]
    effects.append(Effect(None, None))
    return ChuSpace(lat, effects, kind="natural")


def reduced_effects(lat: SemiLattice, star: Mapping[str, str] | None = None) -> ChuSpace:
    """Keep two-sided labels l(x, y) only when y lies above the star of x."""
    star = lat.star if star is None else dict(star)
    if star is None:
        raise PreconditionError(f"reduced effects need a star map; {lat.name} has none")
    report = validate_star(lat, star)
    if not report.valid:
        raise PreconditionError(f"invalid star on {lat.name}: {report.violations[0]}")
    xs = lat.elements
    bottom = lat.bottom
    effects = [
        Effect(x, y)
        for x in xs
        for y in xs
        if x != bottom and y != bottom and lat.leq(star[x], y)
    ]
    effects += [Effect(x, None) for x in xs]
    effects += [Effect(None, x) for x in xs]
    effects.append(Effect(None, None))
    return ChuSpace(lat, effects, kind="reduced")


def default_effects(lat: SemiLattice) -> ChuSpace:
    """Reduced effects when the space carries a star, natural effects otherwise."""
    return reduced_effects(lat) if lat.star is not None else natural_effects(lat)


def check_chu_axioms(space: ChuSpace) -> ChuReport:
    """Exhaustively check bilinearity, extensionality, separation and the closure conditions."""
    lat = space.states
    effects = space.effects
    rows = space.rows
    n_states = len(lat)
    violations: list[tuple[str, tuple]] = []
    meet_s = lat.meet_table

    for i, e in enumerate(effects):
        r = rows[i]
        for a in range(n_states):
            for b in range(a + 1, n_states):
                if r[meet_s[a][b]] != MEET_TABLE[r[a]][r[b]]:
                    violations.append(("state-meet", (str(e), lat.elements[a], lat.elements[b])))

    for i, e1 in enumerate(effects):
        for j in range(i + 1, len(effects)):
            e2 = effects[j]
            m = space.effect_meet(e1, e2)
            if m not in space:
                violations.append(("closed-under-meet", (str(e1), str(e2), str(m))))
                continue
            rm = rows[space.index(m)]
            if any(rm[k] != MEET_TABLE[rows[i][k]][rows[j][k]] for k in range(n_states)):
                violations.append(("effect-meet", (str(e1), str(e2))))

    seen_rows: dict[tuple[int, ...], Effect] = {}
    for i, e in enumerate(effects):
        if rows[i] in seen_rows:
            violations.append(("extensional", (str(seen_rows[rows[i]]), str(e))))
        else:
            seen_rows[rows[i]] = e

    seen_cols: dict[tuple[int, ...], str] = {}
    for j, x in enumerate(lat.elements):
        col = tuple(r[j] for r in rows)
        if col in seen_cols:
            violations.append(("separated", (seen_cols[col], x)))
        else:
            seen_cols[col] = x

    for i, e in enumerate(effects):
        b = e.bar()
        if b not in space:
            violations.append(("closed-under-bar", (str(e),)))
        elif any(rows[space.index(b)][k] != BAR_TABLE[rows[i][k]] for k in range(n_states)):
            violations.append(("bar-row", (str(e),)))

    for e, rule in ((space.y_effect, "contains-Y"), (space.bottom_effect, "contains-bottom")):
        if e not in space:
            violations.append((rule, (str(e),)))

    # Required of proper subspaces only: the natural space of a state compatible
    # with everything (e.g. the top of a chain) has no two-sided label for it.
    lonely = [
        ("two-sided-for-every-state", (x,))
        for x in lat.elements
        if x != lat.bottom
        and not any(e.yes == x and e.no is not None and e.no != lat.bottom for e in effects)
    ]
    if space.kind == "natural":
        return ChuReport(tuple(violations), tuple(lonely))
    return ChuReport(tuple(violations + lonely))


# -- reconstruction ----------------------------------------------------------


def _as_state_table(space: ChuSpace, a: Mapping[str, BoolVal] | Sequence) -> list[int]:
    lat = space.states
    if isinstance(a, Mapping):
        missing = [x for x in lat.elements if x not in a]
        if missing:
            raise PreconditionError(f"predicate undefined on {missing}")
        return [int(BoolVal(a[x])) for x in lat.elements]
    values = [int(BoolVal(v)) for v in a]
    if len(values) != len(lat):
        raise PreconditionError("predicate length does not match the number of states")
    return values


def effect_from_state_predicate(space: ChuSpace, a: Mapping[str, BoolVal] | Sequence) -> Effect:
    """The effect whose evaluation row is the monotone, meet-preserving predicate ``a``."""
    lat = space.states
    values = _as_state_table(space, a)
    n = len(lat)
    for i in range(n):
        for j in range(n):
            if lat.leq_index(i, j) and not LEQ_TABLE[values[i]][values[j]]:
                raise PreconditionError(
                    f"predicate is not monotone: {lat.elements[i]} ⊑ {lat.elements[j]}"
                )
    meet = lat.meet_table
    for i in range(n):
        for j in range(i + 1, n):
            if values[meet[i][j]] != MEET_TABLE[values[i]][values[j]]:
                raise PreconditionError(
                    f"predicate does not preserve the meet of {lat.elements[i]} and {lat.elements[j]}"
                )
    yes = [i for i in range(n) if values[i] == 1]
    no = [i for i in range(n) if values[i] == 2]
    effect = Effect(
        lat.elements[lat.meet_indices(yes)] if yes else None,
        lat.elements[lat.meet_indices(no)] if no else None,
    )
    if effect not in space:
        raise PreconditionError(f"the predicate is the row of {effect}, which is not in {space!r}")
    if list(space.rows[space.index(effect)]) != values:
        raise ConsistencyError(f"reconstructed {effect} does not reproduce the predicate")
    return effect


def state_from_effect_predicate(space: ChuSpace, b: Mapping[Effect, BoolVal] | Sequence) -> str:
    """The state whose evaluation column is ``b``.

    ``b`` must be monotone, meet-preserving, commute with bar and send Y_E to Y.
    """
    if isinstance(b, Mapping):
        missing = [str(e) for e in space.effects if e not in b]
        if missing:
            raise PreconditionError(f"predicate undefined on {missing[:3]}")
        values = [int(BoolVal(b[e])) for e in space.effects]
    else:
        values = [int(BoolVal(v)) for v in b]
        if len(values) != len(space.effects):
            raise PreconditionError("predicate length does not match the number of effects")
    n = len(values)
    if values[space.y_index] != 1:
        raise PreconditionError("predicate must send Y_E to Y")
    leq = space.leq_matrix
    meet = space.meet_index
    bar = space.bar_index
    for i in range(n):
        if bar[i] < 0 or values[bar[i]] != BAR_TABLE[values[i]]:
            raise PreconditionError(f"predicate does not commute with bar at {space.effects[i]}")
        for j in range(n):
            if leq[i][j] and not LEQ_TABLE[values[i]][values[j]]:
                raise PreconditionError(
                    f"predicate is not monotone: {space.effects[i]} ⊑ {space.effects[j]}"
                )
            if j > i and meet[i][j] >= 0 and values[meet[i][j]] != MEET_TABLE[values[i]][values[j]]:
                raise PreconditionError(
                    f"predicate does not preserve the meet of {space.effects[i]} and {space.effects[j]}"
                )
    accepted = [i for i in range(n) if values[i] == 1]
    lb = accepted[0]
    for i in accepted[1:]:
        lb = meet[lb][i]
        if lb < 0:
            raise PreconditionError("effects answering Y have no meet inside the space")
    lat = space.states
    yes_states = [j for j, v in enumerate(space.rows[lb]) if v == 1]
    if not yes_states:
        raise PreconditionError(f"{space.effects[lb]} answers Y on no state")
    state = lat.elements[lat.meet_indices(yes_states)]
    j = lat.index(state)
    if any(space.rows[i][j] != values[i] for i in range(n)):
        raise ConsistencyError(f"reconstructed state {state} does not reproduce the predicate")
    return state


# -- maximal effects and atoms ----------------------------------------------


def max_effects(space: ChuSpace) -> tuple[Effect, ...]:
    """Maximal effects: quasi-antipodal two-sided labels together with Y_E and its bar."""
    lat = space.states
    if not has_pure_description(lat):
        raise PreconditionError(f"max_effects requires a pure description; {lat.name} has none")
    formula = [
        e for e in space.effects if e.two_sided and quasi_antipodal(lat, e.yes, e.no)
    ] + [space.y_effect, space.ybar_effect]
    leq = space.leq_matrix
    direct = [
        e
        for i, e in enumerate(space.effects)
        if not any(leq[i][j] and i != j for j in range(len(space.effects)))
    ]
    if set(formula) != set(direct):
        raise ConsistencyError(
            f"maximal effects by formula {sorted(map(str, formula))} differ from direct scan "
            f"{sorted(map(str, direct))}"
        )
    return tuple(e for e in space.effects if e in set(formula))


def pure_effects(space: ChuSpace) -> tuple[Effect, ...]:
    return max_effects(space)


def atoms(space: ChuSpace) -> tuple[Effect, ...]:
    """One-sided labels on pure states."""
    lat = space.states
    if not has_pure_description(lat):
        raise PreconditionError(f"atoms requires a pure description; {lat.name} has none")
    pure = lat.maximal_elements()
    wanted = {Effect(p, None) for p in pure} | {Effect(None, p) for p in pure}
    return tuple(e for e in space.effects if e in wanted)


def effect_irreducibles(space: ChuSpace) -> tuple[Effect, ...]:
    names = set(space.effect_lattice().meet_irreducibles())
    return tuple(e for e in space.effects if str(e) in names)
