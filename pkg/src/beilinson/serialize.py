"""JSON serialization for graded representations.

A module file is a JSON object with keys:

* ``"n"`` — number of vertices,
* ``"r"`` — number of arrows between consecutive vertices,
* ``"field"`` — either ``{"type": "Q"}`` or ``{"type": "Fp", "p": <prime>}``,
* ``"dims"`` — list of ``n`` non-negative integers,
* ``"maps"`` — object whose key ``"g<s>_<i>"`` (arrow index ``s`` starting
  at 1, layer index ``i`` starting at 0) holds the matrix of arrow ``s``
  from layer ``i`` to layer ``i + 1`` as a row-major list of rows.

Rational entries are encoded as strings such as ``"-3/7"`` (and integers as
``"5"``); prime-field entries are plain JSON integers in ``[0, p)``.
Serialization is canonical, so loading and dumping a file is bit-exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import AlgebraData
from .exactla import GF, QQ, FieldSpec, Mat, PrimeField, RationalField
from .rep import Rep, rep_from_maps

__all__ = [
    "ModuleFileError",
    "dump_rep",
    "dumps_rep",
    "load_rep",
    "loads_rep",
    "rep_from_dict",
    "rep_to_dict",
]


class ModuleFileError(ValueError):
    """Raised when a module file is malformed."""


def _field_to_dict(field: FieldSpec) -> dict[str, Any]:
    if isinstance(field, RationalField):
        return {"type": "Q"}
    if isinstance(field, PrimeField):
        return {"type": "Fp", "p": field.p}
    raise ModuleFileError(f"cannot serialize field {field!r}")


def _field_from_dict(data: Any) -> FieldSpec:
    if not isinstance(data, dict) or "type" not in data:
        raise ModuleFileError("'field' must be an object with a 'type' key")
    kind = data["type"]
    if kind == "Q":
        extra = set(data) - {"type"}
        if extra:
            raise ModuleFileError(f"unexpected keys for rational field: {sorted(extra)}")
        return QQ
    if kind == "Fp":
        extra = set(data) - {"type", "p"}
        if extra:
            raise ModuleFileError(f"unexpected keys for prime field: {sorted(extra)}")
        p = data.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ModuleFileError("'field.p' must be an integer prime")
        try:
            return GF(p)
        except ValueError as exc:
            raise ModuleFileError(str(exc)) from exc
    raise ModuleFileError(f"unknown field type {kind!r}")


def _entry_to_json(field: FieldSpec, value: Any) -> Any:
    if isinstance(field, RationalField):
        return str(value)
    return int(value)


def _entry_from_json(field: FieldSpec, raw: Any, where: str) -> Any:
    if isinstance(field, RationalField):
        if not isinstance(raw, str):
            raise ModuleFileError(
                f"{where}: rational entries must be strings like \"a/b\", got {raw!r}"
            )
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ModuleFileError(f"{where}: invalid rational {raw!r}") from exc
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise ModuleFileError(f"{where}: prime-field entries must be integers, got {raw!r}")
    if not 0 <= raw < field.p:
        raise ModuleFileError(f"{where}: entry {raw} outside [0, {field.p})")
    return raw


def rep_to_dict(m: Rep) -> dict[str, Any]:
    """Encode a representation as a plain JSON-ready dictionary."""
    field = m.field
    maps: dict[str, Any] = {}
    for i in range(m.algebra.n - 1):
        for s in range(m.algebra.r):
            mat = m.maps[s][i]
            maps[f"g{s + 1}_{i}"] = [
                [_entry_to_json(field, mat.entries[a][b]) for b in range(mat.cols)]
                for a in range(mat.rows)
            ]
    return {
        "n": m.algebra.n,
        "r": m.algebra.r,
        "field": _field_to_dict(field),
        "dims": list(m.dims),
        "maps": maps,
    }


def rep_from_dict(data: Any) -> Rep:
    """Decode a representation from a parsed JSON object, validating shapes."""
    if not isinstance(data, dict):
        raise ModuleFileError("module file must be a JSON object")
    required = {"n", "r", "field", "dims", "maps"}
    missing = required - set(data)
    if missing:
        raise ModuleFileError(f"missing keys: {sorted(missing)}")
    extra = set(data) - required
    if extra:
        raise ModuleFileError(f"unexpected keys: {sorted(extra)}")

    n, r = data["n"], data["r"]
    for name, value in (("n", n), ("r", r)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ModuleFileError(f"'{name}' must be a positive integer")
    if n < 2:
        raise ModuleFileError("'n' must be at least 2")

    field = _field_from_dict(data["field"])

    dims = data["dims"]
    if (
        not isinstance(dims, list)
        or len(dims) != n
        or any(not isinstance(d, int) or isinstance(d, bool) or d < 0 for d in dims)
    ):
        raise ModuleFileError(f"'dims' must be a list of {n} non-negative integers")

    raw_maps = data["maps"]
    if not isinstance(raw_maps, dict):
        raise ModuleFileError("'maps' must be an object")
    expected = {f"g{s + 1}_{i}" for s in range(r) for i in range(n - 1)}
    missing_keys = expected - set(raw_maps)
    if missing_keys:
        raise ModuleFileError(f"missing map keys: {sorted(missing_keys)}")
    extra_keys = set(raw_maps) - expected
    if extra_keys:
        raise ModuleFileError(f"unexpected map keys: {sorted(extra_keys)}")

    maps: list[list[Mat]] = []
    for s in range(r):
        row: list[Mat] = []
        for i in range(n - 1):
            key = f"g{s + 1}_{i}"
            raw = raw_maps[key]
            rows_out, cols_in = dims[i + 1], dims[i]
            if not isinstance(raw, list) or len(raw) != rows_out:
                raise ModuleFileError(f"maps['{key}'] must have {rows_out} rows")
            entries = []
            for a, raw_row in enumerate(raw):
                if not isinstance(raw_row, list) or len(raw_row) != cols_in:
                    raise ModuleFileError(
                        f"maps['{key}'] row {a} must have {cols_in} entries"
                    )
                entries.append(
                    [
                        _entry_from_json(field, v, f"maps['{key}'][{a}][{b}]")
                        for b, v in enumerate(raw_row)
                    ]
                )
            row.append(Mat(field, rows_out, cols_in, entries))
        maps.append(row)

    return rep_from_maps(AlgebraData(n, r), field, dims, maps)


def dumps_rep(m: Rep) -> str:
    """Serialize a representation to a canonical JSON string."""
    return json.dumps(rep_to_dict(m), indent=2, sort_keys=True) + "\n"


def loads_rep(text: str) -> Rep:
    """Parse a representation from a JSON string."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModuleFileError(f"invalid JSON: {exc}") from exc
    return rep_from_dict(data)


def dump_rep(m: Rep, path: str) -> None:
    """Write a representation to ``path`` as canonical JSON."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_rep(m))


def load_rep(path: str) -> Rep:
    """Read a representation from the JSON file at ``path``."""
    with open(path, encoding="utf-8") as fh:
        return loads_rep(fh.read())
