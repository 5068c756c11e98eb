"""System files and JSON report helpers.

A system file looks like::

    {"order": {"type": "product", "rank": 2}, "points": 3,
     "generators": [[1, 3, 3], [3, 2, 3]]}

with 1-based image indices. Chain orders use ``{"type": "chain", "levels": [1, 2]}``
and list generators coarsest first.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .dynsys import ClassicalSystem
from .lattice import OrderSpec
from .scalars import GaussRat, format_scalar


class InputError(ValueError):
    """Unreadable or malformed input (as opposed to an invalid system)."""


def parse_order(obj: Any) -> OrderSpec:
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError(f"order must be an object with a 'type', got {obj!r}")
    kind = obj["type"]
    try:
        if kind == "chain":
            return OrderSpec.chain(obj["levels"])
        if kind in ("product", "lex"):
            return OrderSpec(kind, int(obj["rank"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"incomplete order description {obj!r}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"unknown order type {kind!r}")


def system_from_json(obj: Any) -> ClassicalSystem:
    """Build an unvalidated system; structural JSON problems raise InputError."""
    if not isinstance(obj, dict):
        raise InputError("system file must hold a JSON object")
    for key in ("order", "points", "generators"):
        if key not in obj:
            raise InputError(f"system file lacks {key!r}")
    order = parse_order(obj["order"])
    points = obj["points"]
    gens = obj["generators"]
    if not isinstance(points, int) or isinstance(points, bool):
        raise InputError("'points' must be an integer")
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise InputError("'generators' must be a list of lists")
    out = []
    for g in gens:
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in g):
            raise InputError("generator images must be integers")
        out.append(tuple(v - 1 for v in g))
    return ClassicalSystem(points, order, tuple(out))


def load_system(path: Union[str, Path]) -> ClassicalSystem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    return system_from_json(obj)


def system_to_json(sys_: ClassicalSystem) -> dict:
    o = sys_.order
    if o.kind == "chain":
        order = {"type": "chain", "levels": list(o.levels)}
    else:
        order = {"type": o.kind, "rank": o.rank}
    return {
        "order": order,
        "points": sys_.points,
        "generators": [[v + 1 for v in g] for g in sys_.generators],
    }


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, exact scalars as strings."""
    return json.dumps(_plain(obj), sort_keys=True, indent=2)


def _plain(obj: Any) -> Any:
    if isinstance(obj, GaussRat):
        return format_scalar(obj)
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(v) for v in obj)
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def one_based(points) -> list:
    return sorted(z + 1 for z in points)
