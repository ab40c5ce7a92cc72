"""The shipped fixture corpus: BOOL, CHAIN2, CHAIN3, FLAT3 and FLAT4STAR."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..errors import SchemaError
from ..lattice import SemiLattice
from .documents import load_semilattice

FIXTURE_NAMES = ("BOOL", "CHAIN2", "CHAIN3", "FLAT3", "FLAT4STAR")

_ALIASES = {"FLAT4*": "FLAT4STAR", "FLAT4⋆": "FLAT4STAR", "FLAT4": "FLAT4STAR"}


def canonical_fixture_name(name: str) -> str | None:
    key = name.strip().upper()
    key = _ALIASES.get(key, key)
    return key if key in FIXTURE_NAMES else None


def fixture_text(name: str) -> str:
    key = canonical_fixture_name(name)
    if key is None:
        raise SchemaError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return resources.files(__package__).joinpath("data", f"{key}.json").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def fixture(name: str) -> SemiLattice:
    return load_semilattice(json.loads(fixture_text(name)))


def all_fixtures() -> list[SemiLattice]:
    return [fixture(name) for name in FIXTURE_NAMES]
