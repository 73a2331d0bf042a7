"""Quadruple JSON: {"dim": n, "C": {...}, "D": {...}, "B1": {...}, "B2": {...}}"""

from cone_duality.data.read_polyhedron import check_ceiling, parse_polyhedron
from cone_duality.duality_props import Quadruple


def parse_quadruple(document: dict) -> Quadruple:
    dim = int(document["dim"])
    check_ceiling(dim)
    sets = {name: parse_polyhedron(document[name], dim) for name in ("C", "D", "B1", "B2")}
    return Quadruple(dim=dim, **sets)
