"""
Polyhedra with paired, canonical H- and V-representations.

H-representation rows (a, b) encode a . x <= b. V-representation is
conv(vertices) + cone(rays). Both are kept in canonical form so that set equality is
structural equality:

- H: equalities are brought to reduced row echelon form on [a | b] and emitted as +/- pairs,
  facet rows are reduced against the equalities, every row is a primitive integer vector,
  rows are deduplicated and sorted.
- V: the lineality space is emitted as +/- pairs of its RREF basis, vertices and pointed rays
  are projected onto the orthogonal complement of the lineality space, rays are primitive,
  lists are deduplicated and sorted.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import sympy as sp
from loguru import logger

from cone_duality.errors import DimensionMismatchError, HypothesisError
from cone_duality.polyrat.conversion import generators_of, inequalities_of
from cone_duality.polyrat.rational import (
    INF,
    Extended,
    RatVector,
    add,
    dot,
    is_zero,
    neg,
    primitive,
    scale as scale_vector,
    unit,
    zeros,
)

HRow = tuple[RatVector, Fraction]


@dataclass(frozen=True)
class HRep:
    dim: int
    rows: tuple[HRow, ...]

    @classmethod
    def from_rows(cls, dim: int, rows: Sequence[Sequence]) -> "HRep":
        """Build from [a_1, ..., a_dim, b] rows."""
        parsed = []
        for row in rows:
            if len(row) != dim + 1:
                raise DimensionMismatchError(
                    f"H-row {list(row)} has {len(row)} entries, expected {dim + 1}"
                )
            parsed.append((tuple(Fraction(a) for a in row[:-1]), Fraction(row[-1])))
        return cls(dim=dim, rows=tuple(parsed))

    def satisfied_by(self, x: RatVector) -> bool:
        return all(dot(a, x) <= b for a, b in self.rows)

    def recedes_along(self, r: RatVector) -> bool:
        return all(dot(a, r) <= 0 for a, _ in self.rows)


@dataclass(frozen=True)
class VRep:
    dim: int
    vertices: tuple[RatVector, ...]
    rays: tuple[RatVector, ...]

    @property
    def is_empty(self) -> bool:
        return not self.vertices


def _empty_h(dim: int) -> HRep:
    return HRep(dim=dim, rows=((zeros(dim), Fraction(-1)),))


def _to_sympy(rows: Sequence[Sequence[Fraction]]) -> sp.Matrix:
    return sp.Matrix(
        [[sp.Rational(Fraction(a).numerator, Fraction(a).denominator) for a in row] for row in rows]
    )


def _to_fractions(row) -> RatVector:
    return tuple(Fraction(int(a.p), int(a.q)) for a in row)


def echelon_form(rows: Sequence[Sequence[Fraction]]) -> tuple[list[RatVector], list[int]]:
    """Nonzero rows of the reduced row echelon form and their pivot columns."""
    if not rows:
        return [], []
    reduced, pivots = _to_sympy(rows).rref()
    return [_to_fractions(reduced.row(i)) for i in range(len(pivots))], list(pivots)


def _complement_projector(basis: Sequence[RatVector]) -> Optional[sp.Matrix]:
    """Orthogonal projector onto the complement of span(basis), None for an empty basis."""
    if not basis:
        return None
    lines = _to_sympy(basis)
    return sp.eye(lines.cols) - lines.T * (lines * lines.T).inv() * lines


def _project(projector: Optional[sp.Matrix], v: RatVector) -> RatVector:
    if projector is None:
        return tuple(v)
    return _to_fractions(projector * _to_sympy([v]).T)


def canonical_h(dim: int, equalities: Sequence[RatVector], inequalities: Sequence[RatVector]) -> HRep:
    """
    Canonical H-representation from equality and inequality rows given as (a..., b) vectors
    of length dim + 1.
    """
    echelon, pivots = echelon_form(equalities)
    if any(p == dim for p in pivots):
        return _empty_h(dim)
    equality_rows = [primitive(row) for row in echelon]

    rows: set[RatVector] = set()
    for row in equality_rows:
        rows.add(row)
        rows.add(neg(row))
    for row in inequalities:
        reduced = tuple(row)
        for pivot, e in zip(pivots, echelon):
            if reduced[pivot] != 0:
                reduced = tuple(a - reduced[pivot] * b for a, b in zip(reduced, e))
        if is_zero(reduced[:dim]):
            if reduced[dim] < 0:
                return _empty_h(dim)
            continue
        rows.add(primitive(reduced))
    return HRep(dim=dim, rows=tuple((row[:dim], row[dim]) for row in sorted(rows)))


def canonical_v(
    dim: int,
    vertices: Sequence[RatVector],
    rays: Sequence[RatVector],
    lineality: Sequence[RatVector],
) -> VRep:
    """Canonical V-representation from minimal generators and a lineality basis."""
    if not vertices:
        return VRep(dim=dim, vertices=(), rays=())
    echelon, _ = echelon_form(lineality)
    basis = [primitive(row) for row in echelon]
    projector = _complement_projector(basis)

    canonical_rays: set[RatVector] = set()
    for b in basis:
        canonical_rays.add(b)
        canonical_rays.add(neg(b))
    for r in rays:
        projected = _project(projector, r)
        if not is_zero(projected):
            canonical_rays.add(primitive(projected))
    canonical_vertices = {_project(projector, v) for v in vertices}
    return VRep(dim=dim, vertices=tuple(sorted(canonical_vertices)), rays=tuple(sorted(canonical_rays)))


def h_to_v(h: HRep) -> VRep:
    """
    Convert an H-representation into the canonical V-representation of the same set.

    An infeasible system yields the empty V-representation.
    """
    generators = generators_of(h.dim, h.rows)
    if not generators.vertices:
        logger.debug(f"H-representation with {len(h.rows)} rows in dim {h.dim} is infeasible")
    return canonical_v(h.dim, generators.vertices, generators.rays, generators.lineality)


def v_to_h(v: VRep) -> HRep:
    """Convert a V-representation into the canonical, irredundant H-representation."""
    if v.is_empty:
        return _empty_h(v.dim)
    described = inequalities_of(v.dim, v.vertices, v.rays)
    return canonical_h(v.dim, described.equalities, described.inequalities)


@dataclass(frozen=True)
class Polyhedron:
    """A closed convex polyhedral set carrying both canonical representations."""

    dim: int
    h: HRep
    v: VRep

    @classmethod
    def from_h(cls, h: HRep) -> "Polyhedron":
        v = h_to_v(h)
        return cls(dim=h.dim, h=v_to_h(v), v=v)

    @classmethod
    def from_v(cls, v: VRep) -> "Polyhedron":
        h = v_to_h(v)
        return cls(dim=v.dim, h=h, v=h_to_v(h))

    @classmethod
    def from_inequalities(cls, dim: int, rows: Sequence[Sequence]) -> "Polyhedron":
        return cls.from_h(HRep.from_rows(dim, rows))

    @classmethod
    def from_generators(
        cls, dim: int, vertices: Sequence[Sequence], rays: Sequence[Sequence] = ()
    ) -> "Polyhedron":
        for g in list(vertices) + list(rays):
            if len(g) != dim:
                raise DimensionMismatchError(f"Generator {list(g)} does not live in dimension {dim}")
        return cls.from_v(
            VRep(
                dim=dim,
                vertices=tuple(tuple(Fraction(a) for a in x) for x in vertices),
                rays=tuple(tuple(Fraction(a) for a in r) for r in rays),
            )
        )

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(dim=dim, h=_empty_h(dim), v=VRep(dim=dim, vertices=(), rays=()))

    @classmethod
    def origin(cls, dim: int) -> "Polyhedron":
        return cls.from_generators(dim, [zeros(dim)])

    @classmethod
    def universe(cls, dim: int) -> "Polyhedron":
        rays = [unit(dim, i) for i in range(dim)] + [neg(unit(dim, i)) for i in range(dim)]
        return cls.from_generators(dim, [zeros(dim)], rays)

    @property
    def is_empty(self) -> bool:
        return self.v.is_empty

    @property
    def vertices(self) -> tuple[RatVector, ...]:
        return self.v.vertices

    @property
    def rays(self) -> tuple[RatVector, ...]:
        return self.v.rays

    def equalities(self) -> list[HRow]:
        rows = set(self.h.rows)
        return [(a, b) for a, b in self.h.rows if (neg(a), -b) in rows]

    def __str__(self) -> str:
        return (
            f"Polyhedron(dim={self.dim}, {len(self.h.rows)} rows, "
            f"{len(self.v.vertices)} vertices, {len(self.v.rays)} rays)"
        )


def _check_dims(p: Polyhedron, q: Polyhedron) -> None:
    if p.dim != q.dim:
        raise DimensionMismatchError(f"Dimension mismatch: {p.dim} != {q.dim}")


def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    _check_dims(p, q)
    if p.is_empty or q.is_empty:
        return Polyhedron.empty(p.dim)
    vertices = [add(u, w) for u in p.vertices for w in q.vertices]
    return Polyhedron.from_v(VRep(dim=p.dim, vertices=tuple(vertices), rays=p.rays + q.rays))


def intersect(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    _check_dims(p, q)
    return Polyhedron.from_h(HRep(dim=p.dim, rows=p.h.rows + q.h.rows))


def contains_point(p: Polyhedron, x: RatVector) -> bool:
    if len(x) != p.dim:
        raise DimensionMismatchError(f"Point of length {len(x)} tested against dim {p.dim}")
    return not p.is_empty and p.h.satisfied_by(tuple(x))


def inclusion_witness(outer: Polyhedron, inner: Polyhedron) -> Optional[RatVector]:
    """
    A point of inner lying outside outer, or None when inner is a subset of outer.

    A failing vertex is returned directly. For a failing ray r violating row (a, b) the point
    v + t r with t = (b - a . v) / (a . r) + 1 is returned, v being the first vertex of inner.
    """
    _check_dims(outer, inner)
    if inner.is_empty:
        return None
    if outer.is_empty:
        return inner.vertices[0]
    for x in inner.vertices:
        if not outer.h.satisfied_by(x):
            return x
    base = inner.vertices[0]
    for r in inner.rays:
        for a, b in outer.h.rows:
            slope = dot(a, r)
            if slope > 0:
                t = (b - dot(a, base)) / slope + 1
                return add(base, scale_vector(r, t))
    return None


def includes(outer: Polyhedron, inner: Polyhedron) -> bool:
    """True iff inner is a subset of outer. The empty set is included in everything."""
    return inclusion_witness(outer, inner) is None


def scale(p: Polyhedron, factor) -> Polyhedron:
    """{factor * x : x in p} for a rational factor > 0."""
    factor = Fraction(factor)
    if factor <= 0:
        raise HypothesisError(f"Scaling factor must be positive, got {factor}")
    if p.is_empty:
        return p
    vertices = tuple(scale_vector(x, factor) for x in p.vertices)
    return Polyhedron.from_v(VRep(dim=p.dim, vertices=vertices, rays=p.rays))


def negate(p: Polyhedron) -> Polyhedron:
    if p.is_empty:
        return p
    return Polyhedron.from_v(
        VRep(
            dim=p.dim,
            vertices=tuple(neg(x) for x in p.vertices),
            rays=tuple(neg(r) for r in p.rays),
        )
    )


def recession_cone(p: Polyhedron) -> Polyhedron:
    if p.is_empty:
        raise HypothesisError("The empty set has no recession cone here")
    return Polyhedron.from_v(VRep(dim=p.dim, vertices=(zeros(p.dim),), rays=p.rays))


def convex_hull_union(polyhedra: Sequence[Polyhedron]) -> Polyhedron:
    """Closed convex hull of a finite union: the polyhedron generated by all generators."""
    if not polyhedra:
        raise ValueError("Need at least one polyhedron")
    dim = polyhedra[0].dim
    for p in polyhedra[1:]:
        _check_dims(polyhedra[0], p)
    vertices = tuple(x for p in polyhedra for x in p.vertices)
    rays = tuple(r for p in polyhedra if not p.is_empty for r in p.rays)
    if not vertices:
        return Polyhedron.empty(dim)
    return Polyhedron.from_v(VRep(dim=dim, vertices=vertices, rays=rays))


def is_cone(p: Polyhedron) -> bool:
    return not p.is_empty and p.vertices == (zeros(p.dim),)


def is_bounded(p: Polyhedron) -> bool:
    return not p.rays


def is_full_dimensional(p: Polyhedron) -> bool:
    return not p.is_empty and not p.equalities()


def gauge(b: Polyhedron, x: RatVector) -> Extended:
    """
    Minkowski functional min{t >= 0 : x in t * b} for a polyhedron containing 0.

    This is the one-variable LP max(0, max over rows with b_i > 0 of a_i . x / b_i), and +inf
    when some row with b_i = 0 has a_i . x > 0 (x leaves every dilate of b).
    """
    if len(x) != b.dim:
        raise DimensionMismatchError(f"Point of length {len(x)} measured in dim {b.dim}")
    if not contains_point(b, zeros(b.dim)):
        raise HypothesisError("gauge requires a set containing 0")
    value = Fraction(0)
    for a, rhs in b.h.rows:
        slope = dot(a, x)
        if rhs == 0:
            if slope > 0:
                return INF
        elif slope / rhs > value:
            value = slope / rhs
    return value
