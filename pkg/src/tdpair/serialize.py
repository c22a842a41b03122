"""JSON input and output for matrices, systems and parameter arrays.

Scalars travel as strings ("3", "-2/5"); plain JSON integers are accepted
on input.  A matrix is either a list of rows or an object
``{"rows": r, "cols": c, "entries": [...]}``.  A system file looks like::

    {"field": {"type": "gf", "p": 101}, "A": [...], "Astar": [...],
     "thetas": [...], "theta_stars": [...]}

where the eigenvalue sequences are optional and select the orderings.
"""

from __future__ import annotations

import json

from .errors import ParseError, TDError
from .linalg import Matrix
from .scalars import Field
from .split import ParameterArray


class InputError(TDError, OSError):
    code = "input-error"


def loads(text, source="<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}")


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 text ({exc.reason})")
    return loads(text, str(path))


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def scalar_from_json(field, value, where="value"):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: scalars must be strings or integers, got {value!r}")
    try:
        return field(value)
    except ZeroDivisionError as exc:
        raise ParseError(f"{where}: {exc}")
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}")


def field_from_json(obj):
    if obj is None:
        raise ParseError("missing 'field'")
    try:
        return Field.from_json(obj)
    except ValueError as exc:
        raise ParseError(f"field: {exc}")


def matrix_from_json(field, obj, name="matrix"):
    if isinstance(obj, dict):
        try:
            rows, nr, nc = obj["entries"], obj["rows"], obj["cols"]
        except KeyError as exc:
            raise ParseError(f"{name}: missing key {exc}")
    else:
        rows, nr, nc = obj, None, None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{name}: expected a nonempty list of rows")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise ParseError(f"{name}: rows must be nonempty and of equal length")
    if nr is not None and (nr, nc) != (len(rows), width):
        raise ParseError(f"{name}: declared {nr}x{nc} but entries are {len(rows)}x{width}")
    vals = [[scalar_from_json(field, x, f"{name}[{i}][{j}]") for j, x in enumerate(r)]
            for i, r in enumerate(rows)]
    return Matrix(field, vals)


def _sequence(field, obj, key):
    seq = obj.get(key)
    if seq is None:
        return None
    if not isinstance(seq, list):
        raise ParseError(f"{key}: expected a list")
    return [scalar_from_json(field, x, f"{key}[{i}]") for i, x in enumerate(seq)]


def system_input(obj):
    """``(field, A, Astar, thetas, theta_stars)`` from a parsed system document."""
    if not isinstance(obj, dict):
        raise ParseError("a system document must be a JSON object")
    field = field_from_json(obj.get("field"))
    for key in ("A", "Astar"):
        if key not in obj:
            raise ParseError(f"missing '{key}'")
    A = matrix_from_json(field, obj["A"], "A")
    Astar = matrix_from_json(field, obj["Astar"], "Astar")
    return field, A, Astar, _sequence(field, obj, "thetas"), _sequence(field, obj, "theta_stars")


def array_input(obj):
    """A ``ParameterArray`` from ``{"field", "thetas", "theta_stars", "zetas"}``."""
    if not isinstance(obj, dict):
        raise ParseError("a parameter-array document must be a JSON object")
    field = field_from_json(obj.get("field"))
    seqs = {}
    for key in ("thetas", "theta_stars", "zetas"):
        seqs[key] = _sequence(field, obj, key)
        if seqs[key] is None:
            raise ParseError(f"missing '{key}'")
    try:
        return ParameterArray(field, seqs["thetas"], seqs["theta_stars"], seqs["zetas"])
    except ValueError as exc:
        raise ParseError(f"parameter array: {exc}")


def system_document(S):
    """A system document that reloads to the same system with the same orderings."""
    fmt = S.field.format
    return {"field": S.field.to_json(),
            "A": S.A.entry_strings(),
            "Astar": S.Astar.entry_strings(),
            "thetas": [fmt(x) for x in S.thetas],
            "theta_stars": [fmt(x) for x in S.theta_stars]}


def array_document(p):
    return {"field": p.field.to_json(), **p.to_json()}
