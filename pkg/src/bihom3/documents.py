"""JSON documents for algebras, operators and operator pairs.

Algebra document::

    {"name": "...", "dim": 3, "field": "Q" | "Q(i)",
     "brackets": [{"args": [i, j, k], "value": {"index": "scalar"}}, ...],
     "alpha": [[...], ...], "beta": [[...], ...],
     "notes": ["..."]}            # optional

Indices are 0-based, scalars are strings such as ``"-1/2"`` or ``"1+2*i"``,
and unlisted triples are zero.  Serialization is deterministic: brackets are
sorted by their index triple and zero coefficients are dropped.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import jsonschema

from .algebra import Algebra3BH, FieldMismatch
from .linalg import DimensionMismatch, Matrix
from .scalars import Field, ScalarParseError, format_scalar, parse_scalar

__all__ = [
    "ALGEBRA_SCHEMA",
    "DocumentError",
    "algebra_from_json",
    "algebra_to_json",
    "dumps",
    "load_algebra",
    "load_document",
    "matrix_from_json",
    "operator_from_json",
    "operator_to_json",
    "pair_from_json",
    "pair_to_json",
]

_SCALAR = {"type": "string", "minLength": 1}
_MATRIX = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _SCALAR}}

ALGEBRA_SCHEMA = {
    "type": "object",
    "required": ["name", "dim", "field", "brackets", "alpha", "beta"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "field": {"enum": ["Q", "Q(i)"]},
        "brackets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["args", "value"],
                "additionalProperties": False,
                "properties": {
                    "args": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 3, "maxItems": 3},
                    "value": {
                        "type": "object",
                        "patternProperties": {"^(0|[1-9][0-9]*)$": _SCALAR},
                        "additionalProperties": False,
                    },
                },
            },
        },
        "alpha": _MATRIX,
        "beta": _MATRIX,
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

OPERATOR_SCHEMA = {
    "type": "object",
    "required": ["kind", "matrix"],
    "additionalProperties": False,
    "properties": {"kind": {"enum": ["product", "complex", "nijenhuis"]}, "matrix": _MATRIX},
}

PAIR_SCHEMA = {
    "type": "object",
    "required": ["kind", "J", "E"],
    "additionalProperties": False,
    "properties": {"kind": {"const": "pair"}, "J": _MATRIX, "E": _MATRIX},
}


class DocumentError(ValueError):
    """Malformed input document; ``location`` points into the JSON."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


def _loc(path) -> str:
    out = "$"
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _validate(doc: Any, schema: dict, where: str = "$"):
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        loc = _loc(exc.absolute_path)
        if where != "$":
            loc = where + loc[1:]
        raise DocumentError(exc.message, loc) from None


def _scalar(text: str, loc: str):
    try:
        return parse_scalar(text)
    except ScalarParseError as exc:
        raise DocumentError(str(exc), loc) from None


def matrix_from_json(rows, loc: str = "$", field: Field | None = None, size: int | None = None) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise DocumentError("matrix must be a non-empty list of rows", loc)
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise DocumentError(f"row {i} has {len(r)} entries, expected {width}", f"{loc}[{i}]")
    if size is not None and (len(rows) != size or width != size):
        raise DocumentError(f"matrix is {len(rows)}x{width}, expected {size}x{size}", loc)
    vals = [[_scalar(x, f"{loc}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    if field is not None:
        for i, r in enumerate(vals):
            for j, x in enumerate(r):
                try:
                    vals[i][j] = field.coerce(x)
                except (TypeError, ValueError) as exc:
                    raise DocumentError(f"field mismatch: {exc}", f"{loc}[{i}][{j}]") from None
    return Matrix(vals)


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return m.tolist()


def algebra_from_json(doc: Any) -> Algebra3BH:
    _validate(doc, ALGEBRA_SCHEMA)
    n = doc["dim"]
    field = Field(doc["field"])
    bracket: dict[tuple[int, int, int], list] = {}
    for bi, entry in enumerate(doc["brackets"]):
        loc = f"$.brackets[{bi}]"
        args = tuple(entry["args"])
        if any(a >= n for a in args):
            raise DocumentError(f"index out of range for dimension {n}: {list(args)}", f"{loc}.args")
        if args in bracket:
            raise DocumentError(f"duplicate bracket entry for {list(args)}", f"{loc}.args")
        vec = [field.zero] * n
        for key, text in entry["value"].items():
            idx = int(key)
            if idx >= n:
                raise DocumentError(f"index {idx} out of range for dimension {n}", f"{loc}.value.{key}")
            x = _scalar(text, f"{loc}.value.{key}")
            try:
                vec[idx] = field.coerce(x)
            except (TypeError, ValueError) as exc:
                raise DocumentError(f"field mismatch: {exc}", f"{loc}.value.{key}") from None
        bracket[args] = vec
    alpha = matrix_from_json(doc["alpha"], "$.alpha", field, n)
    beta = matrix_from_json(doc["beta"], "$.beta", field, n)
    try:
        return Algebra3BH(doc["name"], n, field, bracket, alpha, beta, doc.get("notes", ()))
    except (FieldMismatch, DimensionMismatch, IndexError) as exc:
        raise DocumentError(str(exc)) from None


def algebra_to_json(A: Algebra3BH) -> dict:
    doc: dict[str, Any] = {
        "name": A.name,
        "dim": A.dim,
        "field": A.field.value,
        "brackets": [
            {"args": list(key), "value": {str(l): format_scalar(c) for l, c in enumerate(vec) if c}}
            for key, vec in sorted(A.bracket.items())
        ],
        "alpha": A.alpha.tolist(),
        "beta": A.beta.tolist(),
    }
    if A.notes:
        doc["notes"] = list(A.notes)
    return doc


def operator_from_json(doc: Any, algebra: Algebra3BH | None = None) -> tuple[str, Matrix]:
    _validate(doc, OPERATOR_SCHEMA)
    size = algebra.dim if algebra is not None else None
    field = algebra.field if algebra is not None else None
    return doc["kind"], matrix_from_json(doc["matrix"], "$.matrix", field, size)


def operator_to_json(kind: str, m: Matrix) -> dict:
    return {"kind": kind, "matrix": m.tolist()}


def pair_from_json(doc: Any, algebra: Algebra3BH | None = None) -> tuple[Matrix, Matrix]:
    _validate(doc, PAIR_SCHEMA)
    size = algebra.dim if algebra is not None else None
    field = algebra.field if algebra is not None else None
    return (
        matrix_from_json(doc["J"], "$.J", field, size),
        matrix_from_json(doc["E"], "$.E", field, size),
    )


def pair_to_json(J: Matrix, E: Matrix) -> dict:
    return {"kind": "pair", "J": J.tolist(), "E": E.tolist()}


def load_document(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None


def load_algebra(path: str | Path) -> Algebra3BH:
    return algebra_from_json(load_document(path))


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
