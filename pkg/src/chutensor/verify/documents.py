"""The structured document format and the pair/effect literal syntax.

Documents are UTF-8 JSON objects with a fixed key order, so saving the same
semilattice twice produces byte-identical text.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from ..errors import SchemaError
from ..lattice import SemiLattice

SCHEMA = "chutensor/semilattice"
SCHEMA_VERSION = 1
OUTPUT_SCHEMA_VERSION = 1

_KEYS = ("schema", "schema_version", "name", "elements", "covers", "bottom", "star")


def load_semilattice(doc: dict[str, Any]) -> SemiLattice:
    """Validate a parsed document and build the semilattice it describes."""
    if not isinstance(doc, dict):
        raise SchemaError("a semilattice document must be an object")
    unknown = set(doc) - set(_KEYS)
    if unknown:
        raise SchemaError(f"unknown keys {sorted(unknown)}")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {doc.get('schema_version')!r}")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise SchemaError("'name' must be a non-empty string")
    elements = doc.get("elements")
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise SchemaError("'elements' must be a list of strings")
    covers = doc.get("covers", [])
    if not isinstance(covers, list) or not all(
        isinstance(c, list) and len(c) == 2 and all(isinstance(x, str) for x in c) for c in covers
    ):
        raise SchemaError("'covers' must be a list of [lower, upper] pairs")
    bottom = doc.get("bottom")
    if bottom is not None and not isinstance(bottom, str):
        raise SchemaError("'bottom' must be an element id")
    star = doc.get("star")
    if star is not None and (
        not isinstance(star, dict) or not all(isinstance(v, str) for v in star.values())
    ):
        raise SchemaError("'star' must map element ids to element ids")
    return SemiLattice(name, elements, [tuple(c) for c in covers], bottom, star)


def dump_semilattice(lat: SemiLattice) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "name": lat.name,
        "elements": list(lat.elements),
        "covers": [list(c) for c in lat.covers],
        "bottom": lat.bottom,
    }
    if lat.star is not None:
        doc["star"] = dict(lat.star)
    return doc


def to_text(obj: Any) -> str:
    """Canonical JSON text: objects one key per line, lists of scalars kept on one line."""
    return _render(obj, 0) + "\n"


def _render(obj: Any, depth: int) -> str:
    pad = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k, ensure_ascii=False)}: {_render(v, depth + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * depth + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in obj) + "]"
        items = [pad + _render(v, depth + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * depth + "]"
    return json.dumps(obj, ensure_ascii=False)


def save_semilattice(lat: SemiLattice) -> str:
    return to_text(dump_semilattice(lat))


def read_document(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid document ({exc.msg} at line {exc.lineno})") from None


def read_semilattice(path: str | Path) -> SemiLattice:
    return load_semilattice(read_document(path))


# -- literals -----------------------------------------------------------------

_TOKEN = r"[^\s,()\[\]]+"
_PAIR_RE = re.compile(rf"\(\s*({_TOKEN})\s*,\s*({_TOKEN})\s*\)")


def parse_pair(text: str) -> tuple[str, str]:
    match = _PAIR_RE.fullmatch(text.strip())
    if not match:
        raise SchemaError(f"not a pair literal: {text!r}")
    return match.group(1), match.group(2)


def parse_pairset(text: str) -> list[tuple[str, str]]:
    """Parse ``[(a,b),(c,d)]`` into a list of pairs (order preserved, duplicates dropped)."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise SchemaError(f"a pair set must be written [(a,b),...], got {text!r}")
    inner = body[1:-1].strip()
    pairs = []
    pos = 0
    while pos < len(inner):
        match = _PAIR_RE.match(inner, pos)
        if not match:
            raise SchemaError(f"malformed pair set near {inner[pos:]!r}")
        pairs.append((match.group(1), match.group(2)))
        pos = match.end()
        rest = inner[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
        elif rest:
            raise SchemaError(f"malformed pair set near {rest!r}")
        pos = len(inner) - len(rest)
    if not pairs:
        raise SchemaError("a pair set must be nonempty")
    return list(dict.fromkeys(pairs))


def format_pair(pair: tuple[str, str]) -> str:
    return f"({pair[0]},{pair[1]})"


def format_pairset(pairs) -> str:
    return "[" + ",".join(format_pair(p) for p in pairs) + "]"


def resolve_bottom_alias(lat: SemiLattice, x: str) -> str:
    """Accept ``bot`` and ``⊥`` as spellings of the bottom element."""
    if x in lat:
        return x
    if x in ("bot", "⊥", "_"):
        return lat.bottom
    raise SchemaError(f"unknown element {x!r} in {lat.name}")
