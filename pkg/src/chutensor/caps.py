"""Size caps for exhaustive procedures.

Defaults can be overridden with the ``CHUTENSOR_CAPS`` environment variable,
e.g. ``CHUTENSOR_CAPS="classifier=80,minimal=49,maximal=30"``.
"""

from __future__ import annotations

import os

from .errors import CapExceeded, SchemaError

ENV_VAR = "CHUTENSOR_CAPS"

DEFAULT_CAPS = {
    # carrier size for structural classifiers
    "classifier": 64,
    # |S_A| * |S_B| for minimal / Fraser enumeration
    "minimal": 36,
    # max(|E_A|, |E_B|) for maximal / regular enumeration
    "maximal": 24,
}


def get_cap(name: str) -> int:
    raw = os.environ.get(ENV_VAR, "").strip()
    caps = dict(DEFAULT_CAPS)
    if raw:
        for item in raw.split(","):
            key, sep, value = item.partition("=")
            key = key.strip()
            if not sep or key not in caps:
                raise SchemaError(f"bad {ENV_VAR} entry {item!r}")
            try:
                caps[key] = int(value)
            except ValueError as exc:
                raise SchemaError(f"bad {ENV_VAR} entry {item!r}") from exc
    return caps[name]


def check_cap(name: str, size: int, what: str) -> None:
    limit = get_cap(name)
    if size > limit:
        raise CapExceeded(f"{what}: size {size} exceeds the {name} cap of {limit}")
