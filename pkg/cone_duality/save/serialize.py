"""Conversion of reports and domain objects to JSON-compatible values."""

import dataclasses
import math
from enum import Enum
from fractions import Fraction

import numpy as np

from cone_duality.polyrat import Infinity, Polyhedron, format_rational


def polyhedron_to_json(p: Polyhedron) -> dict:
    return {
        "dim": p.dim,
        "h": [[format_rational(x) for x in a + (b,)] for a, b in p.h.rows],
        "v": {
            "vertices": [[format_rational(x) for x in v] for v in p.vertices],
            "rays": [[format_rational(x) for x in r] for r in p.rays],
        },
    }


def matrix_to_json(a: np.ndarray) -> list:
    """Complex matrices as rows of [re, im] pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a, dtype=complex)]


def _float(value: float):
    if math.isfinite(value):
        return value
    if math.isnan(value):
        return "nan"
    return "inf" if value > 0 else "-inf"


def to_jsonable(value):
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (Fraction, Infinity)):
        return format_rational(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (float, np.floating)):
        return _float(float(value))
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return matrix_to_json(value)
        return [to_jsonable(x) for x in value.tolist()]
    if isinstance(value, Polyhedron):
        return polyhedron_to_json(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(x) for x in value]
    if dataclasses.is_dataclass(value):
        result = {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
        if isinstance(getattr(type(value), "holds", None), property):
            result["holds"] = value.holds
        return result
    raise TypeError(f"Cannot serialize {type(value).__name__}")
