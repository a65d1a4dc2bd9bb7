"""
JSON files for unitaries, states and gate sets.

Layouts::

    unitary   {"n": 1, "matrix": [[[re, im], [re, im]], [[re, im], [re, im]]]}
    state     {"n": 1, "amplitudes": [[re, im], [re, im]]}
    gate set  [{"name": "H", "arity": 1, "matrix": <matrix as above>}, ...]

Every complex entry is a two-element list ``[re, im]``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import numpy as np

from .errors import UcxError
from .linalg import NORM_TOL, UNITARY_TOL, PureState, UnitaryOperator, check_unitary
from .programs import Gate, GateSet

__all__ = [
    "InputError",
    "ParseError",
    "DimensionError",
    "UnitarityError",
    "parse_unitary_file",
    "parse_state_file",
    "parse_gate_set_file",
    "unitary_to_json",
    "state_to_json",
    "matrix_to_json",
]

PathLike = Union[str, Path]


class InputError(UcxError):
    exit_code = 2


class ParseError(InputError):
    exit_code = 2


class DimensionError(InputError):
    exit_code = 3


class UnitarityError(InputError):
    exit_code = 4


def _load(path: PathLike):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _scalar(entry) -> complex:
    if (
        not isinstance(entry, list)
        or len(entry) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
    ):
        raise ParseError(f"complex entry must be [re, im], got {entry!r}")
    z = complex(float(entry[0]), float(entry[1]))
    if not np.isfinite(z):
        raise ParseError(f"non-finite entry {entry!r}")
    return z


def _qubit_count(doc) -> int:
    n = doc.get("n") if isinstance(doc, dict) else None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError('"n" must be a positive integer')
    return n


def _matrix(rows, dim: int) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    if len(rows) != dim or any(len(r) != dim for r in rows):
        shape = (len(rows), sorted({len(r) for r in rows}))
        raise DimensionError(f"expected a {dim}x{dim} matrix, got rows/cols {shape}")
    return np.array([[_scalar(e) for e in r] for r in rows], dtype=np.complex128)


def parse_unitary_file(path: PathLike, tol: float = UNITARY_TOL) -> UnitaryOperator:
    doc = _load(path)
    n = _qubit_count(doc)
    if "matrix" not in doc:
        raise ParseError('missing "matrix"')
    m = _matrix(doc["matrix"], 1 << n)
    if not check_unitary(m, tol):
        raise UnitarityError(f"{path}: matrix is not unitary within {tol:g}")
    return UnitaryOperator(m, n=n, tol=tol)


def parse_state_file(path: PathLike, tol: float = NORM_TOL) -> PureState:
    doc = _load(path)
    n = _qubit_count(doc)
    amps = doc.get("amplitudes")
    if not isinstance(amps, list):
        raise ParseError('"amplitudes" must be a list of [re, im] entries')
    if len(amps) != 1 << n:
        raise DimensionError(f"expected {1 << n} amplitudes, got {len(amps)}")
    v = np.array([_scalar(e) for e in amps], dtype=np.complex128)
    norm2 = float(np.vdot(v, v).real)
    if abs(norm2 - 1.0) > tol:
        raise UnitarityError(f"{path}: state norm**2 {norm2!r} is not 1 within {tol:g}")
    return PureState(v, n=n, tol=tol)


def parse_gate_set_file(path: PathLike, tol: float = UNITARY_TOL) -> GateSet:
    doc = _load(path)
    if not isinstance(doc, list) or not doc:
        raise ParseError("gate set must be a non-empty JSON list")
    gates = []
    for item in doc:
        if not isinstance(item, dict) or not isinstance(item.get("name"), str):
            raise ParseError(f"gate entry needs a string name: {item!r}")
        arity = item.get("arity")
        if not isinstance(arity, int) or isinstance(arity, bool) or arity < 1:
            raise ParseError(f"gate {item['name']!r}: arity must be a positive integer")
        m = _matrix(item.get("matrix"), 1 << arity)
        if not check_unitary(m, tol):
            raise UnitarityError(f"gate {item['name']!r} is not unitary within {tol:g}")
        gates.append(Gate(item["name"], arity, m))
    names = [g.name for g in gates]
    if len(set(names)) != len(names):
        raise ParseError("gate names must be unique")
    return GateSet(tuple(gates))


def _pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def matrix_to_json(m: np.ndarray) -> list:
    return [[_pair(z) for z in row] for row in np.asarray(m)]


def unitary_to_json(u: UnitaryOperator) -> dict:
    return {"n": u.n, "matrix": matrix_to_json(u.matrix)}


def state_to_json(x: PureState) -> dict:
    return {"n": x.n, "amplitudes": [_pair(z) for z in x.amplitudes]}
