"""Verification suites: exhaustive checks of the library's laws on fixtures and small corpora."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..effects import (
    ChuSpace,
    check_chu_axioms,
    default_effects,
    effect_from_state_predicate,
    natural_effects,
    reduced_effects,
    state_from_effect_predicate,
)
from ..errors import ChuTensorError, PreconditionError
from ..fraser import bifilter_closure, compare_carriers, enumerate_fraser, fraser_member
from ..lattice import (
    SemiLattice,
    find_stars,
    has_pure_description,
    is_distributive,
    is_simplex,
)
from ..morphisms import (
    adjoint_indices,
    brute_force_state_maps,
    enumerate_morphisms,
    tensor_channel_minimal,
    tensor_channel_regular,
)
from ..tensor import (
    enumerate_regular,
    galois_closure,
    is_maximal_member,
    is_minimal_member,
    is_regular_member,
    minimal_leq_criterion,
    minimal_tables,
    omega,
    product,
    pure_tensor,
    sigma_witness,
    sup_minimal,
    table_leq,
    table_meet,
)
from .fixtures import FIXTURE_NAMES, fixture
from .small import small_semilattices

SUITES = ("chu", "classify", "tensor-order", "tensor-enum", "regular", "morphism")


@dataclass(frozen=True)
class Check:
    id: str
    status: str  # "pass", "fail" or "skip"
    witness: object = None
    detail: object = None

    def to_dict(self) -> dict:
        out: dict = {"id": self.id, "status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail is not None:
            out["detail"] = _jsonable(self.detail)
        return out


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, check_id: str, ok: bool, witness=None, detail=None) -> None:
        if not ok and witness is None:
            witness = "unspecified"
        self.checks.append(Check(check_id, "pass" if ok else "fail", None if ok else witness, detail))

    def skip(self, check_id: str, reason: str) -> None:
        self.checks.append(Check(check_id, "skip", None, reason))

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "skip": 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts

    @property
    def passed(self) -> bool:
        return self.summary["fail"] == 0

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == "fail"]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "summary": self.summary,
            "checks": [c.to_dict() for c in self.checks],
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=str) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, np.generic):
        return obj.item()
    return str(obj)


def _guard(report: VerificationReport, check_id: str, fn: Callable[[], None]) -> None:
    """Run a check body; a library error becomes a failed check carrying the message."""
    try:
        fn()
    except ChuTensorError as exc:
        report.add(check_id, False, f"{type(exc).__name__}: {exc}")


# -- chu ----------------------------------------------------------------------


def effect_spaces(lat: SemiLattice) -> list[ChuSpace]:
    """The natural space plus one reduced space per valid star (the declared star first)."""
    spaces = [natural_effects(lat)]
    stars = find_stars(lat)
    if lat.star is not None:
        stars = [lat.star] + [s for s in stars if s != lat.star]
    for star in stars:
        spaces.append(reduced_effects(lat, star))
    return spaces


def _roundtrip_failure(space: ChuSpace):
    for e in space.effects:
        back = effect_from_state_predicate(space, space.rows[space.index(e)])
        if back != e:
            return ("effect", str(e), str(back))
    for x in space.states.elements:
        back = state_from_effect_predicate(space, [space.rows[i][space.states.index(x)] for i in range(len(space))])
        if back != x:
            return ("state", x, back)
    return None


def chu_checks(report: VerificationReport, lats: Sequence[SemiLattice], label: str | None = None) -> None:
    """Chu axioms and both reconstruction round trips; ``label`` aggregates a corpus into one check."""
    axiom_fail = trip_fail = None
    spaces_seen = 0
    for lat in lats:
        for space in effect_spaces(lat):
            spaces_seen += 1
            tag = f"{lat.name}/{space.kind}"
            result = check_chu_axioms(space)
            if not result.passed and axiom_fail is None:
                axiom_fail = (tag, result.violations[0])
            try:
                failure = _roundtrip_failure(space)
            except ChuTensorError as exc:
                failure = (type(exc).__name__, str(exc))
            if failure and trip_fail is None:
                trip_fail = (tag, failure)
            if label is None:
                report.add(f"chu/axioms/{tag}", result.passed, result.violations[:3] or None,
                           {"advisories": len(result.advisories)} if result.advisories else None)
                report.add(f"chu/reconstruction/{tag}", failure is None, failure)
    if label is not None:
        report.add(f"chu/axioms/{label}", axiom_fail is None, axiom_fail, {"spaces": spaces_seen})
        report.add(f"chu/reconstruction/{label}", trip_fail is None, trip_fail, {"spaces": spaces_seen})


# -- classify -----------------------------------------------------------------


def classification(lat: SemiLattice) -> dict:
    pure = has_pure_description(lat)
    simplex = is_simplex(lat) if pure else None
    distributive = is_distributive(lat)
    return {
        "pure_description": pure,
        "simplex": None if simplex is None else simplex.holds,
        "distributive": distributive.holds,
        "distributive_witness": distributive.witness,
        "stars": len(find_stars(lat)),
    }


def classifier_audit(lats: Sequence[SemiLattice]) -> dict:
    """Distributive ⇒ simplex over a corpus, plus the converse's exceptions."""
    counterexamples, simplex_not_distributive, no_pure = [], [], []
    for lat in lats:
        info = classification(lat)
        if info["distributive"] and not info["pure_description"]:
            no_pure.append(lat.name)
        if info["distributive"] and info["pure_description"] and not info["simplex"]:
            counterexamples.append(lat.name)
        if info["simplex"] and not info["distributive"]:
            simplex_not_distributive.append(
                {"name": lat.name, "failing_triple": list(info["distributive_witness"])}
            )
    return {
        "checked": len(lats),
        "counterexamples": counterexamples,
        "distributive_without_pure_description": no_pure,
        "simplex_not_distributive": simplex_not_distributive,
    }


def _bool_isomorphic(lat: SemiLattice) -> bool:
    return len(lat) == 3 and len(lat.maximal_elements()) == 2


# -- tensor order -------------------------------------------------------------


def pair_subsets(pairs: Sequence, max_size: int):
    for size in range(1, max_size + 1):
        yield from itertools.combinations(pairs, size)


def oracle_equivalence(chu_a: ChuSpace, chu_b: ChuSpace, max_size: int = 3):
    """First disagreement between the word-problem criterion and the table order, or None."""
    ctx = product(chu_a, chu_b)
    lat_a, lat_b = chu_a.states, chu_b.states
    for subset in pair_subsets(ctx.pairs, max_size):
        cells = ctx.omega_cells(ctx.pair_indices(subset))
        pointwise = ctx.closure_vector(cells)
        for k, target in enumerate(ctx.pairs):
            if minimal_leq_criterion(lat_a, lat_b, subset, target) != bool(pointwise[k]):
                return (list(subset), target, bool(pointwise[k]))
    return None


def order_implication(lat_a: SemiLattice, lat_b: SemiLattice, max_size: int = 3):
    """First U, p with Fraser membership but no minimal membership, or None; also counts strict cases."""
    pairs = [(x, y) for x in lat_a.elements for y in lat_b.elements]
    strict = 0
    for subset in pair_subsets(pairs, max_size):
        closed = bifilter_closure(lat_a, lat_b, subset)
        for target in pairs:
            minimal = minimal_leq_criterion(lat_a, lat_b, subset, target)
            if target in closed and not minimal:
                return (list(subset), target), strict
            if minimal and target not in closed:
                strict += 1
    return None, strict


DIAGONAL = [("s1", "s1"), ("s2", "s2"), ("s3", "s3")]


def diagonal_divergence(lat: SemiLattice) -> dict:
    return {
        "minimal": minimal_leq_criterion(lat, lat, DIAGONAL, (lat.bottom, lat.bottom)),
        "fraser": fraser_member(lat, lat, DIAGONAL, (lat.bottom, lat.bottom)),
    }


# -- tensor enumeration --------------------------------------------------------


def maximal_tables(tables):
    return [t for t in tables if not any(u != t and table_leq(t, u) for u in tables)]


def pure_structure_failure(chu_a: ChuSpace, chu_b: ChuSpace):
    tables = minimal_tables(chu_a, chu_b)
    pa, pb = chu_a.states.maximal_elements(), chu_b.states.maximal_elements()
    pure = {pure_tensor(chu_a, chu_b, p, q) for p in pa for q in pb}
    tops = set(maximal_tables(tables))
    if tops != pure:
        return ("maximal elements are not the pure tensors of pure states", len(tops), len(pure))
    for t in tables:
        above = [p for p in galois_closure(t) if p[0] in pa and p[1] in pb]
        if not above or omega(chu_a, chu_b, above) != t:
            return ("not the meet of the pure tensors above it", sorted(galois_closure(t)))
    return None


def least_upper_bound(tables, phi, psi):
    uppers = [t for t in tables if table_leq(phi, t) and table_leq(psi, t)]
    least = [u for u in uppers if all(table_leq(u, v) for v in uppers)]
    return least[0] if least else None


def supremum_failure(chu_a: ChuSpace, chu_b: ChuSpace):
    tables = minimal_tables(chu_a, chu_b)
    for phi, psi in itertools.combinations_with_replacement(tables, 2):
        expected = least_upper_bound(tables, phi, psi)
        got = sup_minimal(phi, psi)
        if got != expected:
            return (sorted(galois_closure(phi)), sorted(galois_closure(psi)))
    return None


def galois_law_failure(chu_a: ChuSpace, chu_b: ChuSpace, max_size: int = 2):
    ctx = product(chu_a, chu_b)
    for phi in minimal_tables(chu_a, chu_b):
        closed = galois_closure(phi)
        for subset in pair_subsets(ctx.pairs, max_size):
            if (set(subset) <= closed) != table_leq(phi, omega(chu_a, chu_b, subset)):
                return (sorted(closed), list(subset))
    return None


def bihomomorphism_failure(chu_a: ChuSpace, chu_b: ChuSpace):
    lat_a, lat_b = chu_a.states, chu_b.states
    for x1, x2 in itertools.combinations(lat_a.elements, 2):
        for y in lat_b.elements:
            left = pure_tensor(chu_a, chu_b, lat_a.meet([x1, x2]), y)
            if left != table_meet([pure_tensor(chu_a, chu_b, x1, y), pure_tensor(chu_a, chu_b, x2, y)]):
                return ("first", x1, x2, y)
    for y1, y2 in itertools.combinations(lat_b.elements, 2):
        for x in lat_a.elements:
            left = pure_tensor(chu_a, chu_b, x, lat_b.meet([y1, y2]))
            if left != table_meet([pure_tensor(chu_a, chu_b, x, y1), pure_tensor(chu_a, chu_b, x, y2)]):
                return ("second", x, y1, y2)
    return None


# -- regular ------------------------------------------------------------------


def pick_sigma_states(lat: SemiLattice) -> tuple[str, str] | None:
    pure = lat.maximal_elements()
    for s1 in pure:
        for s2 in pure:
            if s1 != s2 and not lat.leq(lat.star[s1], s2):
                return s1, s2
    return None


def sigma_report(chu_a: ChuSpace, chu_b: ChuSpace, states: Sequence[str]) -> dict:
    s1, s2, t1, t2 = states
    lat_a, lat_b = chu_a.states, chu_b.states
    sigma = sigma_witness(chu_a, chu_b, s1, s2, t1, t2)
    maximal = is_maximal_member(sigma)
    regular = is_regular_member(sigma).holds if maximal else False
    minimal = is_minimal_member(sigma).holds
    lower_1 = omega(chu_a, chu_b, [(s1, t1), (s2, t2)])
    lower_2 = omega(chu_a, chu_b, [(lat_a.star[s1], lat_b.bottom), (lat_a.bottom, lat_b.star[t1])])
    closed = galois_closure(sigma)
    fraser_images = [f for f in enumerate_fraser(lat_a, lat_b) if omega(chu_a, chu_b, f) == sigma]
    return {
        "sigma": sigma,
        "maximal": maximal.holds,
        "regular": regular,
        "minimal": minimal,
        "above_generators": table_leq(lower_1, sigma) and table_leq(lower_2, sigma),
        "galois_closure": sorted(closed, key=product(chu_a, chu_b).pair_index),
        "fraser_preimages": len(fraser_images),
    }


# -- morphisms ----------------------------------------------------------------


def morphism_laws(spaces: Sequence[ChuSpace]) -> dict:
    """Exhaustive duality, composition and meet laws over all ordered pairs/triples of spaces."""
    result = {"maps": 0, "enumeration": None, "duality": None, "surjective_injective": None,
              "composition": None, "meet": None, "composites": 0, "meets": 0}
    homs: dict[tuple[int, int], np.ndarray] = {}
    adjs: dict[tuple[int, int], np.ndarray] = {}
    for i, a in enumerate(spaces):
        for j, b in enumerate(spaces):
            morphisms = enumerate_morphisms(a, b)
            brute = brute_force_state_maps(a.states, b.states)
            if result["enumeration"] is None and sorted(map(_key, brute)) != sorted(_key(m.state_map) for m in morphisms):
                result["enumeration"] = (a.states.name, b.states.name, len(morphisms), len(brute))
            result["maps"] += len(morphisms)
            images = np.array(
                [[b.states.index(m(x)) for x in a.states.elements] for m in morphisms], dtype=np.intp
            ).reshape(len(morphisms), len(a.states))
            homs[i, j] = images
            adjs[i, j] = np.array(
                [[a.index(m.adjoint(e)) for e in b.effects] for m in morphisms], dtype=np.intp
            ).reshape(len(morphisms), len(b))
            for m, adj, img in zip(morphisms, adjs[i, j], images):
                if result["duality"] is None and m.duality_failure() is not None:
                    result["duality"] = (repr(m), m.duality_failure())
                if result["duality"] is None and not np.array_equal(adj, adjoint_indices(a, b, img)):
                    result["duality"] = (repr(m), "fast adjoint disagrees")
                if result["surjective_injective"] is None and m.adjoint_is_surjective() and not m.is_injective():
                    result["surjective_injective"] = repr(m)
    for i, a in enumerate(spaces):
        for j, b in enumerate(spaces):
            for k, c in enumerate(spaces):
                f_imgs, g_imgs = homs[i, j], homs[j, k]
                f_adj, g_adj = adjs[i, j], adjs[j, k]
                for fi in range(len(f_imgs)):
                    composite = g_imgs[:, f_imgs[fi]]  # (g count, |S_A|)
                    for gi in range(len(g_imgs)):
                        expected = f_adj[fi][g_adj[gi]]
                        got = adjoint_indices(a, c, composite[gi])
                        result["composites"] += 1
                        if not np.array_equal(expected, got) and result["composition"] is None:
                            result["composition"] = (a.states.name, b.states.name, c.states.name, fi, gi)
    for (i, j), imgs in homs.items():
        a, b = spaces[i], spaces[j]
        meet_b = np.array(b.states.meet_table, dtype=np.intp)
        meet_e = np.array(a.meet_index, dtype=np.intp)
        adj = adjs[i, j]
        for fi in range(len(imgs)):
            met = meet_b[imgs[fi][None, :], imgs]  # pointwise meets with every g
            for gi in range(len(imgs)):
                result["meets"] += 1
                got = adjoint_indices(a, b, met[gi])
                expected = meet_e[adj[fi], adj[gi]]
                if not np.array_equal(got, expected) and result["meet"] is None:
                    result["meet"] = (a.states.name, b.states.name, fi, gi)
    return result


def _key(state_map: dict) -> tuple:
    return tuple(sorted(state_map.items()))


def channel_failure(chu_a: ChuSpace, chu_b: ChuSpace):
    fs = enumerate_morphisms(chu_a, chu_a)
    gs = enumerate_morphisms(chu_b, chu_b)
    tables = minimal_tables(chu_a, chu_b)
    for f in fs:
        for g in gs:
            minimal = tensor_channel_minimal(f, g)
            regular = tensor_channel_regular(f, g)
            for phi in tables:
                image = minimal(phi)
                if image != regular(phi):
                    return ("channels disagree", repr(f), repr(g))
                if not is_maximal_member(regular(phi)):
                    return ("image not maximal", repr(f), repr(g))
            for phi, psi in itertools.combinations(tables, 2):
                if minimal(table_meet([phi, psi])) != table_meet([minimal(phi), minimal(psi)]):
                    return ("channel does not commute with meets", repr(f), repr(g))
    return None


# -- runner -------------------------------------------------------------------


def _default_pairs(suite: str) -> list[tuple[SemiLattice, SemiLattice]]:
    f = fixture
    if suite == "tensor-order":
        return [(f("FLAT3"), f("FLAT3")), (f("BOOL"), f("FLAT3"))]
    if suite == "tensor-enum":
        return [(f(a), f(b)) for a in FIXTURE_NAMES for b in FIXTURE_NAMES]
    if suite == "regular":
        return [(f("BOOL"), f(x)) for x in ("BOOL", "FLAT3", "FLAT4STAR")] + [(f("FLAT4STAR"), f("FLAT4STAR"))]
    return []


def _pairs_from(inputs: Sequence[SemiLattice], suite: str):
    if not inputs:
        return _default_pairs(suite)
    if len(inputs) == 1:
        return [(inputs[0], inputs[0])]
    return list(itertools.combinations_with_replacement(inputs, 2)) if len(inputs) > 2 else [tuple(inputs)]


def run_suite(name: str, inputs: Sequence[SemiLattice] = ()) -> VerificationReport:
    """Run one suite (or ``all``) on the given semilattices, or on the default corpus."""
    if name == "all":
        report = VerificationReport("all")
        for suite in SUITES:
            report.extend(run_suite(suite, inputs))
        return report
    if name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    report = VerificationReport(name)
    runner = {
        "chu": _suite_chu,
        "classify": _suite_classify,
        "tensor-order": _suite_tensor_order,
        "tensor-enum": _suite_tensor_enum,
        "regular": _suite_regular,
        "morphism": _suite_morphism,
    }[name]
    runner(report, list(inputs))
    return report


def _suite_chu(report: VerificationReport, inputs: list[SemiLattice]) -> None:
    if inputs:
        chu_checks(report, inputs)
        return
    chu_checks(report, [fixture(n) for n in FIXTURE_NAMES])
    chu_checks(report, small_semilattices(5), label="all-semilattices-up-to-5")


def _suite_classify(report: VerificationReport, inputs: list[SemiLattice]) -> None:
    lats = inputs or [fixture(n) for n in FIXTURE_NAMES]
    for lat in lats:
        info = classification(lat)
        ok = not (info["distributive"] and info["pure_description"] and not info["simplex"])
        report.add(f"classify/distributive-implies-simplex/{lat.name}", ok, lat.name, info)
    if inputs:
        return
    corpus = small_semilattices(6) + [fixture(n) for n in FIXTURE_NAMES]
    audit = classifier_audit(corpus)
    report.add("classify/audit-up-to-6", not audit["counterexamples"], audit["counterexamples"], audit)
    names = [entry["name"] for entry in audit["simplex_not_distributive"]]
    report.add("classify/simplex-not-distributive-includes-BOOL", "BOOL" in names, names, names)


def _suite_tensor_order(report: VerificationReport, inputs: list[SemiLattice]) -> None:
    for lat_a, lat_b in _pairs_from(inputs, "tensor-order"):
        tag = f"{lat_a.name}x{lat_b.name}"
        chu_a, chu_b = default_effects(lat_a), default_effects(lat_b)

        def oracle():
            bad = oracle_equivalence(chu_a, chu_b)
            report.add(f"tensor-order/criterion-matches-tables/{tag}", bad is None, bad)

        def implication():
            bad, strict = order_implication(lat_a, lat_b)
            report.add(f"tensor-order/fraser-implies-minimal/{tag}", bad is None, bad,
                       {"minimal_only_memberships": strict})

        _guard(report, f"tensor-order/criterion-matches-tables/{tag}", oracle)
        _guard(report, f"tensor-order/fraser-implies-minimal/{tag}", implication)
        if lat_a.name == lat_b.name == "FLAT3":
            verdicts = diagonal_divergence(lat_a)
            report.add("tensor-order/diagonal-triple-divergence/FLAT3xFLAT3",
                       verdicts == {"minimal": True, "fraser": False}, verdicts, verdicts)
    if not inputs:
        for a in FIXTURE_NAMES:
            for b in FIXTURE_NAMES:
                if (a, b) in (("FLAT3", "FLAT3"), ("BOOL", "FLAT3")):
                    continue
                lat_a, lat_b = fixture(a), fixture(b)
                bad, strict = order_implication(lat_a, lat_b)
                report.add(f"tensor-order/fraser-implies-minimal/{a}x{b}", bad is None, bad,
                           {"minimal_only_memberships": strict})


def _suite_tensor_enum(report: VerificationReport, inputs: list[SemiLattice]) -> None:
    for lat_a, lat_b in _pairs_from(inputs, "tensor-enum"):
        tag = f"{lat_a.name}x{lat_b.name}"
        chu_a, chu_b = default_effects(lat_a), default_effects(lat_b)

        def carriers():
            cmp = compare_carriers(lat_a, lat_b)
            detail = {"fraser": cmp.fraser_count, "minimal": cmp.minimal_count, "isomorphic": cmp.isomorphic}
            required = bool(is_distributive(lat_a)) or bool(is_distributive(lat_b))
            if lat_a.name == lat_b.name == "CHAIN2":
                required = required and cmp.fraser_count == cmp.minimal_count == 5
            ok = cmp.isomorphic if required else cmp.order_preserving
            report.add(f"tensor-enum/fraser-vs-minimal/{tag}", ok, cmp.witness, detail)

        def pure():
            if not (has_pure_description(lat_a) and has_pure_description(lat_b)):
                report.skip(f"tensor-enum/pure-structure/{tag}", "a factor has no pure description")
                return
            bad = pure_structure_failure(chu_a, chu_b)
            report.add(f"tensor-enum/pure-structure/{tag}", bad is None, bad)

        def sup():
            bad = supremum_failure(chu_a, chu_b)
            report.add(f"tensor-enum/supremum/{tag}", bad is None, bad)

        def laws():
            bad = galois_law_failure(chu_a, chu_b) or bihomomorphism_failure(chu_a, chu_b)
            report.add(f"tensor-enum/galois-and-bihomomorphism/{tag}", bad is None, bad)

        for check_id, body in (("fraser-vs-minimal", carriers), ("pure-structure", pure),
                               ("supremum", sup), ("galois-and-bihomomorphism", laws)):
            _guard(report, f"tensor-enum/{check_id}/{tag}", body)


def _suite_regular(report: VerificationReport, inputs: list[SemiLattice]) -> None:
    for lat_a, lat_b in _pairs_from(inputs, "regular"):
        tag = f"{lat_a.name}x{lat_b.name}"
        chu_a, chu_b = default_effects(lat_a), default_effects(lat_b)

        def inclusion():
            regular = set(enumerate_regular(chu_a, chu_b))
            minimal = set(minimal_tables(chu_a, chu_b))
            detail = {"regular": len(regular), "minimal": len(minimal)}
            if _bool_isomorphic(lat_a) or _bool_isomorphic(lat_b):
                report.add(f"regular/equals-minimal-with-BOOL-factor/{tag}", regular == minimal,
                           {"regular_only": len(regular - minimal), "minimal_only": len(minimal - regular)}, detail)
            else:
                report.add(f"regular/contains-minimal/{tag}", minimal <= regular, len(minimal - regular), detail)

        _guard(report, f"regular/enumeration/{tag}", inclusion)
        if lat_a.star is not None and lat_b.star is not None and not _bool_isomorphic(lat_a):
            _guard(report, f"regular/sigma-witness/{tag}", lambda: _sigma_checks(report, tag, chu_a, chu_b))


def _sigma_checks(report: VerificationReport, tag: str, chu_a: ChuSpace, chu_b: ChuSpace) -> None:
    sa, sb = pick_sigma_states(chu_a.states), pick_sigma_states(chu_b.states)
    if sa is None or sb is None:
        report.skip(f"regular/sigma-witness/{tag}", "no admissible pair of pure states")
        return
    info = sigma_report(chu_a, chu_b, (*sa, *sb))
    detail = {k: v for k, v in info.items() if k != "sigma"}
    detail["states"] = [*sa, *sb]
    ok = info["maximal"] and info["regular"] and not info["minimal"]
    report.add(f"regular/sigma-witness/{tag}", ok, detail, detail)
    report.add(f"regular/sigma-above-generators/{tag}", info["above_generators"], detail)
    in_regular = info["sigma"] in set(enumerate_regular(chu_a, chu_b))
    report.add(f"regular/sigma-enumerated/{tag}", in_regular, "Σ missing from the regular enumeration")
    report.add(f"regular/sigma-not-fraser/{tag}", info["fraser_preimages"] == 0,
               {"fraser_preimages": info["fraser_preimages"]})


def _suite_morphism(report: VerificationReport, inputs: list[SemiLattice]) -> None:
    lats = inputs or [fixture(n) for n in FIXTURE_NAMES]
    spaces = [natural_effects(lat) for lat in lats]
    laws = morphism_laws(spaces)
    detail = {"maps": laws["maps"], "composites": laws["composites"], "meets": laws["meets"]}
    for key in ("enumeration", "duality", "surjective_injective", "composition", "meet"):
        report.add(f"morphism/{key}", laws[key] is None, laws[key], detail if key == "enumeration" else None)
    small = [s for s in spaces if len(s.states) <= 3][:2] or spaces[:1]
    for a in small:
        for b in small:
            tag = f"{a.states.name}x{b.states.name}"

            def channels(a=a, b=b, tag=tag):
                bad = channel_failure(a, b)
                report.add(f"morphism/channels/{tag}", bad is None, bad)

            _guard(report, f"morphism/channels/{tag}", channels)
