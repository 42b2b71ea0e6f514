"""JSON encoding of exact objects: rationals travel as ``"p/q"`` strings."""

from __future__ import annotations

import json
from typing import Any

from .exactla import Matrix, rat_str, to_rat
from .grassmann import Subspace
from . import polytope as _poly


class InputError(ValueError):
    """Malformed or dimensionally inconsistent user input."""


def matrix_json(m: Matrix) -> list[list[str]]:
    return [[rat_str(x) for x in row] for row in m]


def vector_json(v) -> list[str]:
    return [rat_str(x) for x in v]


def _rat_rows(rows: Any, where: str) -> list[list]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{where}: expected an array of arrays")
    try:
        return [[to_rat(x) for x in r] for r in rows]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {exc}") from None


def subspace_to_json(v: Subspace) -> dict:
    return {"n": v.n, "k": v.k, "basis": matrix_json(v.basis)}


def subspace_from_json(data: Any) -> Subspace:
    if not isinstance(data, dict) or "basis" not in data:
        raise InputError("subspace: expected an object with a 'basis' field")
    rows = _rat_rows(data["basis"], "subspace.basis")
    try:
        v = Subspace.from_rows(rows)
    except ValueError as exc:
        raise InputError(f"subspace.basis: {exc}") from None
    for key, actual in (("n", v.n), ("k", v.k)):
        if key in data and data[key] != actual:
            raise InputError(f"subspace.{key} = {data[key]} but the basis gives {actual}")
    return v


def polytope_from_json(data: Any) -> _poly.Polytope:
    if not isinstance(data, dict) or "vertices" not in data:
        raise InputError("polytope: expected an object with a 'vertices' field")
    rows = _rat_rows(data["vertices"], "polytope.vertices")
    n = data.get("n", len(rows[0]) if rows else 0)
    labels = data.get("labels") or None
    try:
        return _poly.build(n, rows, labels)
    except ValueError as exc:
        raise InputError(f"polytope: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
