"""
Normality, additivity, conormality and coadditivity of a quadruple (C, D, B1, B2).

For cones C, D and closed convex sets B1, B2 containing 0 in a common space:

    normal      (B2 + C) ∩ D ⊆ B1
    additive    (B2 ∩ C) + D ⊆ B1
    conormal    B1 ⊆ (B2 ∩ C) + D
    coadditive  B1 ⊆ (B2 + C) ∩ D

The optimal constant of normal/additive is the least α with LHS ⊆ α·B1; for
conormal/coadditive it is the least α with B1 ⊆ RHS(α·B2). Passing to the polar quadruple
(C°, D°, B1°, B2°) swaps normal with conormal and additive with coadditive, with equal
optimal constants, because every sum of polyhedra is closed.
"""

from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from typing import Optional

from loguru import logger

from cone_duality.errors import DimensionMismatchError, HypothesisError
from cone_duality.polar_calc import one_sided_polar
from cone_duality.polyrat import (
    INF,
    Extended,
    LPStatus,
    Polyhedron,
    RatVector,
    VRep,
    contains_point,
    gauge,
    inclusion_witness,
    includes,
    intersect,
    is_cone,
    maximize,
    minkowski_sum,
    scale,
)
from cone_duality.polyrat.rational import neg, unit, zeros


class Property(StrEnum):
    NORMAL = "normal"
    ADDITIVE = "additive"
    CONORMAL = "conormal"
    COADDITIVE = "coadditive"

    @property
    def dual(self) -> "Property":
        return _DUAL_PROPERTY[self]


_DUAL_PROPERTY = {
    Property.NORMAL: Property.CONORMAL,
    Property.CONORMAL: Property.NORMAL,
    Property.ADDITIVE: Property.COADDITIVE,
    Property.COADDITIVE: Property.ADDITIVE,
}


class DualityKind(StrEnum):
    NORMALITY = "normality"
    ADDITIVITY = "additivity"


@dataclass(frozen=True)
class Quadruple:
    dim: int
    C: Polyhedron
    D: Polyhedron
    B1: Polyhedron
    B2: Polyhedron

    def __post_init__(self):
        for name in ("C", "D", "B1", "B2"):
            if getattr(self, name).dim != self.dim:
                raise DimensionMismatchError(
                    f"Quadruple component {name} has dim {getattr(self, name).dim}, expected {self.dim}"
                )
        for name in ("C", "D"):
            if not is_cone(getattr(self, name)):
                raise HypothesisError(f"Quadruple component {name} must be a cone")
        for name in ("B1", "B2"):
            if not contains_point(getattr(self, name), zeros(self.dim)):
                raise HypothesisError(f"Quadruple component {name} must contain 0")


@dataclass(frozen=True)
class ConstantReport:
    property: Property
    alpha_star: Extended
    attained: bool
    witness: Optional[RatVector]


@dataclass(frozen=True)
class DirectionResult:
    statement: str
    primal_holds: bool
    dual_holds: bool
    witness: Optional[RatVector]

    @property
    def agrees(self) -> bool:
        return self.primal_holds == self.dual_holds


@dataclass(frozen=True)
class DualityReport:
    kind: DualityKind
    directions: list[DirectionResult] = field(default_factory=list)
    constants: list[tuple[ConstantReport, ConstantReport]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(d.agrees for d in self.directions) and all(
            primal.alpha_star == dual.alpha_star for primal, dual in self.constants
        )


@dataclass(frozen=True)
class ImplicationReport:
    item: int
    hypothesis: bool
    conclusion: bool
    witness: Optional[RatVector]

    @property
    def holds(self) -> bool:
        return not self.hypothesis or self.conclusion


def inclusion_sides(prop: Property | str, q: Quadruple) -> tuple[Polyhedron, Polyhedron]:
    """(inner, outer) of the inclusion defining the property."""
    prop = Property(prop)
    if prop is Property.NORMAL:
        return intersect(minkowski_sum(q.B2, q.C), q.D), q.B1
    if prop is Property.ADDITIVE:
        return minkowski_sum(intersect(q.B2, q.C), q.D), q.B1
    if prop is Property.CONORMAL:
        return q.B1, minkowski_sum(intersect(q.B2, q.C), q.D)
    return q.B1, intersect(minkowski_sum(q.B2, q.C), q.D)


def property_witness(prop: Property | str, q: Quadruple) -> Optional[RatVector]:
    """A point of the inner set outside the outer set, None when the property holds."""
    inner, outer = inclusion_sides(prop, q)
    return inclusion_witness(outer, inner)


def holds(prop: Property | str, q: Quadruple) -> bool:
    return property_witness(prop, q) is None


def is_normal(q: Quadruple) -> bool:
    return holds(Property.NORMAL, q)


def is_additive(q: Quadruple) -> bool:
    return holds(Property.ADDITIVE, q)


def is_conormal(q: Quadruple) -> bool:
    return holds(Property.CONORMAL, q)


def is_coadditive(q: Quadruple) -> bool:
    return holds(Property.COADDITIVE, q)


def _lex_argmax(values: list[tuple[RatVector, Extended]]) -> tuple[Extended, Optional[RatVector]]:
    best, witness = Fraction(0), None
    for point, value in sorted(values, key=lambda pair: pair[0]):
        if witness is None or value > best:
            best, witness = value, point
    return best, witness


def _outer_constant(inner: Polyhedron, body: Polyhedron, prop: Property) -> ConstantReport:
    """Least α with inner ⊆ α·body: the largest gauge over the vertices of inner."""
    for r in inner.rays:
        if gauge(body, r) != 0:
            return ConstantReport(property=prop, alpha_star=INF, attained=False, witness=r)
    alpha, witness = _lex_argmax([(v, gauge(body, v)) for v in inner.vertices])
    if alpha is INF:
        return ConstantReport(property=prop, alpha_star=INF, attained=False, witness=witness)
    attained = alpha > 0 or (not inner.rays and all(v == zeros(inner.dim) for v in inner.vertices))
    return ConstantReport(property=prop, alpha_star=alpha, attained=attained, witness=witness)


def _block_rows(rows, offset: int, width: int, dim: int, alpha_column: Optional[int] = None):
    """Place the rows (a, b) of a polyhedron on variables [offset, offset + dim)."""
    A, b = [], []
    for a, rhs in rows:
        line = [Fraction(0)] * width
        line[offset : offset + dim] = a
        if alpha_column is None:
            b.append(rhs)
        else:
            line[alpha_column] = -rhs
            b.append(Fraction(0))
        A.append(line)
    return A, b


def _min_scaling(
    point: RatVector, q: Quadruple, prop: Property, homogeneous: bool
) -> Optional[Fraction]:
    """
    Smallest α >= 0 splitting a point of B1 as required by the property, None if impossible.

    conormal:   point = c + d,  c ∈ C ∩ α·B2, d ∈ D
    coadditive: point = u + c,  u ∈ α·B2, c ∈ C
    With homogeneous=True the scaled body is replaced by its recession cone (rays of B1).
    """
    n = q.dim
    width = 2 * n + 1
    alpha = 2 * n
    A: list[list[Fraction]] = []
    b: list[Fraction] = []

    def extend(block):
        A.extend(block[0])
        b.extend(block[1])

    # first block: the part carried by B2; second block: the cone part
    body_rows = [(a, Fraction(0) if homogeneous else rhs) for a, rhs in q.B2.h.rows]
    extend(_block_rows(body_rows, 0, width, n, alpha_column=None if homogeneous else alpha))
    if prop is Property.CONORMAL:
        extend(_block_rows(q.C.h.rows, 0, width, n))
        extend(_block_rows(q.D.h.rows, n, width, n))
    else:
        extend(_block_rows(q.C.h.rows, n, width, n))
    for i in range(n):
        line = [Fraction(0)] * width
        line[i] = Fraction(1)
        line[n + i] = Fraction(1)
        A.append(line)
        b.append(point[i])
        A.append([-a for a in line])
        b.append(-point[i])
    A.append([-a for a in unit(width, alpha)])
    b.append(Fraction(0))

    outcome = maximize(A, b, neg(unit(width, alpha)))
    if outcome.status is LPStatus.INFEASIBLE:
        return None
    return -outcome.value


def _inner_constant(q: Quadruple, prop: Property) -> ConstantReport:
    """Least α with B1 ⊆ (α·B2 ∩ C) + D (conormal) or B1 ⊆ (α·B2 + C) ∩ D (coadditive)."""
    if prop is Property.COADDITIVE:
        witness = inclusion_witness(q.D, q.B1)
        if witness is not None:
            return ConstantReport(property=prop, alpha_star=INF, attained=False, witness=witness)
    for r in q.B1.rays:
        if _min_scaling(r, q, prop, homogeneous=True) is None:
            return ConstantReport(property=prop, alpha_star=INF, attained=False, witness=r)
    values = []
    for v in q.B1.vertices:
        alpha = _min_scaling(v, q, prop, homogeneous=False)
        if alpha is None:
            return ConstantReport(property=prop, alpha_star=INF, attained=False, witness=v)
        values.append((v, alpha))
    alpha, witness = _lex_argmax(values)
    if alpha > 0:
        attained = True
    elif prop is Property.CONORMAL:
        attained = includes(q.D, q.B1)
    else:
        attained = includes(q.C, q.B1) and includes(q.D, q.B1)
    return ConstantReport(property=prop, alpha_star=alpha, attained=attained, witness=witness)


def optimal_constant(prop: Property | str, q: Quadruple) -> ConstantReport:
    """
    Exact optimal constant of a property.

    normal/additive: least α with LHS ⊆ α·B1, i.e. the largest gauge of B1 over the vertices of
    the left-hand polyhedron; +inf when one of its rays leaves the recession cone of B1.
    conormal/coadditive: least α with B1 ⊆ RHS(α·B2), one LP per vertex of B1 plus a
    homogeneous feasibility LP per ray; +inf when some decomposition is infeasible.

    The witness is the lexicographically least vertex attaining the constant, or the
    offending generator for +inf.
    """
    prop = Property(prop)
    if prop in (Property.NORMAL, Property.ADDITIVE):
        inner, _ = inclusion_sides(prop, q)
        report = _outer_constant(inner, q.B1, prop)
    else:
        report = _inner_constant(q, prop)
    logger.debug(f"Optimal {prop} constant: {report.alpha_star} (attained={report.attained})")
    return report


def polar_quadruple(q: Quadruple) -> Quadruple:
    return Quadruple(
        dim=q.dim,
        C=one_sided_polar(q.C),
        D=one_sided_polar(q.D),
        B1=one_sided_polar(q.B1),
        B2=one_sided_polar(q.B2),
    )


def scale_quadruple(q: Quadruple, component: str, factor) -> Quadruple:
    """Scale B1 or B2 by a positive rational."""
    if component not in ("B1", "B2"):
        raise ValueError(f"Only B1 or B2 can be scaled, got {component}")
    scaled = scale(getattr(q, component), factor)
    return Quadruple(
        dim=q.dim,
        C=q.C,
        D=q.D,
        B1=scaled if component == "B1" else q.B1,
        B2=scaled if component == "B2" else q.B2,
    )


def verify_general_duality(kind: DualityKind | str, q: Quadruple) -> DualityReport:
    """
    Check both directions of a duality theorem on q and its polar quadruple, together with
    equality of the optimal constants across the polar.
    """
    kind = DualityKind(kind)
    dual = polar_quadruple(q)
    primal_properties = (
        (Property.NORMAL, Property.CONORMAL)
        if kind is DualityKind.NORMALITY
        else (Property.ADDITIVE, Property.COADDITIVE)
    )
    report = DualityReport(kind=kind)
    for prop in primal_properties:
        primal_witness = property_witness(prop, q)
        dual_witness = property_witness(prop.dual, dual)
        report.directions.append(
            DirectionResult(
                statement=f"{prop}(q) <=> {prop.dual}(polar q)",
                primal_holds=primal_witness is None,
                dual_holds=dual_witness is None,
                witness=primal_witness if primal_witness is not None else dual_witness,
            )
        )
        report.constants.append((optimal_constant(prop, q), optimal_constant(prop.dual, dual)))
    if not report.holds:
        logger.warning(f"General {kind} duality failed on a quadruple in dim {q.dim}")
    return report


def check_lemma33(item: int, q: Quadruple) -> ImplicationReport:
    """
    One-way implications between a property of one quadruple and an inclusion of the other.

    Items 1-4: property of q implies an inclusion among the polars.
    Items 5-8: property of the polar quadruple implies an inclusion in the original space.
    """
    if item not in range(1, 9):
        raise ValueError(f"item must be between 1 and 8, got {item}")
    dual = polar_quadruple(q)
    source, target = (q, dual) if item <= 4 else (dual, q)
    prop = [Property.NORMAL, Property.ADDITIVE, Property.CONORMAL, Property.COADDITIVE][(item - 1) % 4]

    hypothesis = holds(prop, source)
    # the conclusion is the inclusion of the dual property on the other side
    witness = property_witness(prop.dual, target) if hypothesis else None
    return ImplicationReport(
        item=item, hypothesis=hypothesis, conclusion=witness is None, witness=witness
    )


def grosberg_krein_quadruple(base_ball: Polyhedron, cone: Polyhedron, alpha=1) -> Quadruple:
    """
    Encode an ordered space (X, X₊, ball) in Y = X ⊕∞ X:
    C = X₊ ⊕ (-X₊), D = diagonal, B1 = α·{(x, x) : x ∈ ball}, B2 = ball × ball.
    Normality of this quadruple is the statement that a ≤ x ≤ b forces ‖x‖ ≤ α·max(‖a‖, ‖b‖).
    """
    d = base_ball.dim
    if cone.dim != d:
        raise DimensionMismatchError(f"Cone of dim {cone.dim} with a ball of dim {d}")
    if not is_cone(cone):
        raise HypothesisError("The positive cone must be a cone")
    origin = zeros(2 * d)
    zero = zeros(d)
    C = Polyhedron.from_v(
        VRep(
            dim=2 * d,
            vertices=(origin,),
            rays=tuple(r + zero for r in cone.rays) + tuple(zero + neg(r) for r in cone.rays),
        )
    )
    diagonal_rays = []
    for i in range(d):
        e = unit(d, i)
        diagonal_rays += [e + e, neg(e) + neg(e)]
    D = Polyhedron.from_v(VRep(dim=2 * d, vertices=(origin,), rays=tuple(diagonal_rays)))
    B1 = scale(
        Polyhedron.from_v(
            VRep(
                dim=2 * d,
                vertices=tuple(v + v for v in base_ball.vertices),
                rays=tuple(r + r for r in base_ball.rays),
            )
        ),
        alpha,
    )
    B2 = Polyhedron.from_v(
        VRep(
            dim=2 * d,
            vertices=tuple(v + w for v in base_ball.vertices for w in base_ball.vertices),
            rays=tuple(r + zero for r in base_ball.rays) + tuple(zero + r for r in base_ball.rays),
        )
    )
    return Quadruple(dim=2 * d, C=C, D=D, B1=B1, B2=B2)
