"""
Polyhedron JSON, rationals written as ints or "p/q" strings:

    {"dim": 2, "h": [[1, 0, 1], [-1, 0, 1], ...]}            rows a_1 ... a_n b for a.x <= b
    {"dim": 2, "v": {"vertices": [[0, 0], ["1/2", 1]], "rays": [[1, 0]]}}

When both are present the H-representation is used. A polyhedron nested in another
document may omit "dim"; it then inherits the dimension of its container.
"""

from typing import Optional

from loguru import logger

from cone_duality.constants import MAX_AMBIENT_DIM, MAX_FACETS, MAX_GENERATORS
from cone_duality.errors import DimensionCeilingError, DimensionMismatchError
from cone_duality.polyrat import HRep, Polyhedron, VRep, vector


def check_ceiling(dim: int, n_rows: int = 0) -> None:
    if dim > MAX_AMBIENT_DIM or n_rows > MAX_FACETS:
        raise DimensionCeilingError(
            f"Input of dimension {dim} with {n_rows} inequalities exceeds the ceiling "
            f"(dimension {MAX_AMBIENT_DIM}, {MAX_FACETS} inequalities)"
        )


def check_generator_ceiling(dim: int, n_generators: int) -> None:
    if n_generators > MAX_GENERATORS:
        raise DimensionCeilingError(
            f"Input of dimension {dim} with {n_generators} generators exceeds the ceiling "
            f"({MAX_GENERATORS} generators)"
        )


def checked_vector(values, dim: int, what: str):
    v = vector(values)
    if len(v) != dim:
        raise DimensionMismatchError(f"{what} {list(values)} does not have length {dim}")
    return v


def parse_polyhedron(document: dict, dim: Optional[int] = None) -> Polyhedron:
    """
    Build a Polyhedron from its JSON document.

    Raises:
        KeyError: when neither "h" nor "v" is present, or there is no dimension
        ValueError: for malformed rationals or vectors of the wrong length
    """
    dim = int(document["dim"]) if "dim" in document else dim
    if dim is None:
        raise KeyError("dim")

    if "h" in document:
        rows = document["h"]
        check_ceiling(dim, len(rows))
        parsed = []
        for row in rows:
            values = checked_vector(row, dim + 1, "Inequality row")
            parsed.append((values[:dim], values[dim]))
        logger.debug(f"Parsed H-representation with {len(parsed)} rows in dimension {dim}")
        return Polyhedron.from_h(HRep(dim=dim, rows=tuple(parsed)))

    if "v" in document:
        check_ceiling(dim)
        generators = document["v"]
        vertices = tuple(checked_vector(v, dim, "Vertex") for v in generators["vertices"])
        rays = tuple(checked_vector(r, dim, "Ray") for r in generators.get("rays", []))
        check_generator_ceiling(dim, len(vertices) + len(rays))
        logger.debug(f"Parsed V-representation with {len(vertices)} vertices, {len(rays)} rays")
        p = Polyhedron.from_v(VRep(dim=dim, vertices=vertices, rays=rays))
        check_ceiling(dim, len(p.h.rows))
        return p

    raise KeyError("h")
