"""
Exact H <-> V conversion through cddlib in rational arithmetic.

cdd rows are [b, -a] for a . x <= b and [t, x] for generators (t = 1 a vertex, t = 0 a ray).
Rows listed in a matrix's lin_set are equalities or lines.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import cdd
from loguru import logger

from cone_duality.polyrat.rational import RatVector


@dataclass(frozen=True)
class Generators:
    vertices: tuple[RatVector, ...]
    rays: tuple[RatVector, ...]
    lineality: tuple[RatVector, ...]


@dataclass(frozen=True)
class Inequalities:
    """Rows (a_1, ..., a_dim, b), read as a . x = b and a . x <= b respectively."""

    equalities: tuple[RatVector, ...]
    inequalities: tuple[RatVector, ...]


def _matrix(rows: Sequence[Sequence[Fraction]], rep_type) -> "cdd.Matrix":
    mat = cdd.Matrix([list(row) for row in rows], number_type="fraction")
    mat.rep_type = rep_type
    return mat


def _rows(mat: "cdd.Matrix") -> Iterator[tuple[bool, RatVector]]:
    linear = mat.lin_set
    for i in range(mat.row_size):
        yield i in linear, tuple(Fraction(a) for a in mat[i])


def generators_of(dim: int, rows: Sequence[tuple[RatVector, Fraction]]) -> Generators:
    """
    Minimal generators of {x : a . x <= b for every row (a, b)}.

    An infeasible system gives no vertices.
    """
    cdd_rows = [(b,) + tuple(-a for a in normal) for normal, b in rows]
    # 1 >= 0 keeps the matrix nonempty for the whole space
    cdd_rows.append((Fraction(1),) + (Fraction(0),) * dim)
    generators = cdd.Polyhedron(_matrix(cdd_rows, cdd.RepType.INEQUALITY)).get_generators()
    if generators.row_size:
        generators.canonicalize()

    vertices, rays, lineality = [], [], []
    for linear, row in _rows(generators):
        t, x = row[0], row[1:]
        if linear:
            lineality.append(x)
        elif t != 0:
            vertices.append(tuple(a / t for a in x))
        else:
            rays.append(x)
    logger.debug(
        f"cdd: {len(rows)} inequalities in dim {dim} -> {len(vertices)} vertices, "
        f"{len(rays)} rays, {len(lineality)} lines"
    )
    return Generators(vertices=tuple(vertices), rays=tuple(rays), lineality=tuple(lineality))


def inequalities_of(
    dim: int, vertices: Sequence[RatVector], rays: Sequence[RatVector]
) -> Inequalities:
    """Irredundant inequalities and equalities of conv(vertices) + cone(rays), vertices nonempty."""
    cdd_rows = [(Fraction(1),) + tuple(v) for v in vertices]
    cdd_rows += [(Fraction(0),) + tuple(r) for r in rays]
    inequalities = cdd.Polyhedron(_matrix(cdd_rows, cdd.RepType.GENERATOR)).get_inequalities()
    if inequalities.row_size:
        inequalities.canonicalize()

    equalities, facets = [], []
    for linear, row in _rows(inequalities):
        b, minus_a = row[0], row[1:]
        encoded = tuple(-a for a in minus_a) + (b,)
        (equalities if linear else facets).append(encoded)
    logger.debug(
        f"cdd: {len(vertices)} vertices, {len(rays)} rays in dim {dim} -> "
        f"{len(facets)} facets, {len(equalities)} equalities"
    )
    return Inequalities(equalities=tuple(equalities), inequalities=tuple(facets))
