"""Graphviz and structured-document exports."""

from __future__ import annotations

import json
from typing import Callable, Sequence

from ..effects import ChuSpace
from ..errors import PreconditionError
from ..lattice import SemiLattice
from .documents import save_semilattice

FORMATS = ("dot", "structured")


def hasse_edges(count: int, leq: Callable[[int, int], bool]) -> list[tuple[int, int]]:
    """Transitive reduction of a finite partial order given by ``leq`` on ``range(count)``."""
    below = [[j for j in range(count) if j != i and leq(j, i)] for i in range(count)]
    edges = []
    for i in range(count):
        strict = set(below[i])
        for j in below[i]:
            if not any(k in strict and leq(j, k) for k in below[i] if k != j):
                edges.append((j, i))
    return sorted(edges)


def _quote(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def to_dot(name: str, nodes: Sequence[str], edges: Sequence[tuple[int, int]]) -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;"]
    lines += [f"  {_quote(n)};" for n in nodes]
    lines += [f"  {_quote(nodes[a])} -> {_quote(nodes[b])};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(lat: SemiLattice) -> str:
    idx = lat.index
    return to_dot(lat.name, lat.elements, [(idx(a), idx(b)) for a, b in lat.covers])


def effects_dot(space: ChuSpace) -> str:
    leq = space.leq_matrix
    names = [str(e) for e in space.effects]
    return to_dot(f"effects({space.states.name},{space.kind})", names, hasse_edges(len(names), lambda i, j: leq[i][j]))


def carrier_dot(name: str, labels: Sequence[str], leq: Callable[[int, int], bool]) -> str:
    return to_dot(name, labels, hasse_edges(len(labels), leq))


def export(obj, fmt: str) -> str:
    if fmt not in FORMATS:
        raise PreconditionError(f"unknown export format {fmt!r}; choose from {', '.join(FORMATS)}")
    if fmt == "structured":
        if not isinstance(obj, SemiLattice):
            raise PreconditionError("structured export is defined for semilattices")
        return save_semilattice(obj)
    if isinstance(obj, SemiLattice):
        return lattice_dot(obj)
    if isinstance(obj, ChuSpace):
        return effects_dot(obj)
    raise PreconditionError(f"cannot export {type(obj).__name__} as dot")
