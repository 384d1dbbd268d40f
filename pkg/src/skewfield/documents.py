"""JSON documents for instances: strict parsing and canonical serialisation."""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError, ValidationError
from .fields import Field, FieldSpec, field_make
from .linalg import Matrix
from .module import ModuleInstance

GEN_KEYS = ("s_gens", "t_gens", "g_gens", "r_gens")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_field(obj: Any, where: str = "field") -> Field:
    if not isinstance(obj, dict):
        raise ParseError("field spec must be an object", where)
    try:
        return field_make(FieldSpec.from_json(obj))
    except ParseError:
        raise
    except (ValueError, TypeError, KeyError) as exc:
        raise ParseError(f"bad field spec: {exc}", where) from exc


def parse_scalar(F: Field, obj: Any, where: str):
    try:
        return F.from_json(obj)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {obj!r}: {exc}", where) from exc


def parse_vector(F: Field, obj: Any, length: int | None, where: str) -> tuple:
    if not isinstance(obj, list):
        raise ParseError("expected an array", where)
    if length is not None and len(obj) != length:
        raise ParseError(f"expected {length} entries, got {len(obj)}", where)
    return tuple(parse_scalar(F, x, f"{where}[{i}]") for i, x in enumerate(obj))


def parse_matrix(F: Field, obj: Any, n: int | None, where: str) -> Matrix:
    if not isinstance(obj, list) or not obj:
        raise ParseError("expected a nonempty array of rows", where)
    rows = []
    width = n if n is not None else (len(obj[0]) if isinstance(obj[0], list) else None)
    if n is not None and len(obj) != n:
        raise ParseError(f"expected {n} rows, got {len(obj)}", where)
    for i, row in enumerate(obj):
        rows.append(parse_vector(F, row, width, f"{where}[{i}]"))
    return Matrix(F, tuple(rows))


def vector_json(F: Field, v) -> list:
    return [F.to_json(x) for x in v]


def matrix_json(M: Matrix) -> list:
    return [vector_json(M.field, r) for r in M.rows]


def _expect_int(obj: dict, key: str, where: str) -> int:
    val = obj.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise ParseError(f"{key} must be an integer", f"{where}.{key}" if where else key)
    return val


def instance_from_json(obj: Any) -> ModuleInstance:
    if not isinstance(obj, dict):
        raise ParseError("instance document must be a JSON object", "$")
    unknown = set(obj) - {"field", "n", "metadata", *GEN_KEYS}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", "$")
    if "field" not in obj:
        raise ParseError("missing field spec", "field")
    F = parse_field(obj["field"])
    n = _expect_int(obj, "n", "")
    if n < 1:
        raise ParseError("n must be positive", "n")
    gens: dict = {}
    for key in GEN_KEYS:
        if key not in obj or obj[key] is None:
            continue
        block = obj[key]
        if not isinstance(block, list):
            raise ParseError("generator block must be an array", key)
        gens[key] = tuple(parse_matrix(F, m, n, f"{key}[{i}]") for i, m in enumerate(block))
    meta = obj.get("metadata") or {}
    if not isinstance(meta, dict):
        raise ParseError("metadata must be an object", "metadata")
    return ModuleInstance(
        F,
        n,
        s_gens=gens.get("s_gens", ()),
        t_gens=gens.get("t_gens"),
        g_gens=gens.get("g_gens"),
        r_gens=gens.get("r_gens"),
        name=str(meta.get("name", "")),
        metadata=meta,
    )


def parse_instance(text: str) -> ModuleInstance:
    """Parse an instance document; errors carry a JSON path or line number."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return instance_from_json(obj)


def instance_to_json(M: ModuleInstance) -> dict:
    out: dict = {"field": M.field.spec.to_json(), "n": M.n}
    if M.s_gens:
        out["s_gens"] = [matrix_json(m) for m in M.s_gens]
    for key in ("t_gens", "g_gens", "r_gens"):
        gens = getattr(M, key)
        if gens is not None:
            out[key] = [matrix_json(m) for m in gens]
    if M.metadata:
        out["metadata"] = M.metadata
    return out


def serialize(M: ModuleInstance) -> str:
    return dumps(instance_to_json(M))


__all__ = [
    "ParseError",
    "ValidationError",
    "dumps",
    "instance_from_json",
    "instance_to_json",
    "matrix_json",
    "parse_instance",
    "parse_matrix",
    "parse_vector",
    "serialize",
    "vector_json",
]
