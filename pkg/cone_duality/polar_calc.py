"""
One-sided polar calculus on polyhedra.

The one-sided polar of A is {z : <a, z> <= 1 for all a in A}. For a polyhedron it is cut out
by one inequality per generator: <v, z> <= 1 for each vertex v and <r, z> <= 0 for each ray r,
since the defining condition survives convex and conic combinations.

check_polar_identity evaluates both sides of the basic polar identities exactly:

    P1  A° is closed, convex and contains 0
    P2  A ⊆ B implies A° ⊇ B°
    P3  (λA)° = λ⁻¹ A°
    P4  (A_1 ∪ ... ∪ A_k)° = A_1° ∩ ... ∩ A_k°
    P5  A°° = conv(A ∪ {0})
    P6  (A_1 ∩ ... ∩ A_k)° = conv(A_1° ∪ ... ∪ A_k°)     for closed convex A_i ∋ 0
    P7  C° is a cone and C° = -C'                        for a cone C
    P8  (A ∩ C)° = A° + C°                               for closed convex A ∋ 0, cone C
    P9  (A + C)° = A° ∩ C°                               for convex A ∋ 0, cone C

Closures are identities here: finite sums, intersections and hulls of polyhedra are closed.
"""

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

from loguru import logger

from cone_duality.errors import EmptySetError, HypothesisError
from cone_duality.polyrat import (
    HRep,
    Polyhedron,
    RatVector,
    VRep,
    contains_point,
    convex_hull_union,
    h_to_v,
    inclusion_witness,
    includes,
    intersect,
    is_cone,
    minkowski_sum,
    negate,
    scale,
)
from cone_duality.polyrat.rational import dot, neg, zeros


class PolarIdentity(StrEnum):
    P1 = "P1"
    P2 = "P2"
    P3 = "P3"
    P4 = "P4"
    P5 = "P5"
    P6 = "P6"
    P7 = "P7"
    P8 = "P8"
    P9 = "P9"


@dataclass(frozen=True)
class PolarPair:
    primal: Polyhedron
    polar: Polyhedron

    @classmethod
    def of(cls, primal: Polyhedron) -> "PolarPair":
        return cls(primal=primal, polar=one_sided_polar(primal))

    def is_consistent(self) -> bool:
        """
        Every generator of the polar pairs with every generator of the primal, rebuilt from
        the primal's H-representation, to at most 1, or at most 0 when a ray is involved.
        """
        primal = h_to_v(self.primal.h)
        bounds = (
            (primal.vertices, self.polar.vertices, 1),
            (primal.vertices, self.polar.rays, 0),
            (primal.rays, self.polar.vertices, 0),
            (primal.rays, self.polar.rays, 0),
        )
        paired = all(
            dot(a, z) <= bound for left, right, bound in bounds for a in left for z in right
        )
        return paired and contains_point(self.polar, zeros(self.primal.dim))


@dataclass(frozen=True)
class IdentityReport:
    identity: PolarIdentity
    holds: bool
    witness: Optional[RatVector]
    lhs: Polyhedron
    rhs: Polyhedron


def _generator_inequalities(p: Polyhedron) -> HRep:
    rows = [(v, Fraction(1)) for v in p.vertices] + [(r, Fraction(0)) for r in p.rays]
    return HRep(dim=p.dim, rows=tuple(rows))


def one_sided_polar(p: Polyhedron) -> Polyhedron:
    """
    The one-sided polar {z : <a, z> <= 1 for all a in p}.

    Raises:
        EmptySetError: for the empty set
    """
    if p.is_empty:
        raise EmptySetError("The one-sided polar is only defined for nonempty sets")
    return Polyhedron.from_h(_generator_inequalities(p))


def bipolar(p: Polyhedron) -> Polyhedron:
    return one_sided_polar(one_sided_polar(p))


def hull_with_origin(p: Polyhedron) -> Polyhedron:
    """conv(p ∪ {0}), built directly from generators."""
    return Polyhedron.from_v(
        VRep(dim=p.dim, vertices=p.vertices + (zeros(p.dim),), rays=p.rays)
    )


def dual_cone(c: Polyhedron) -> Polyhedron:
    """The dual cone C' = {z : <c, z> >= 0 for all c in C}, computed as -C°."""
    if not is_cone(c):
        raise HypothesisError("dual_cone requires a cone (single vertex 0)")
    return negate(one_sided_polar(c))


def _dual_cone_from_rays(c: Polyhedron) -> Polyhedron:
    rows = tuple((neg(r), Fraction(0)) for r in c.rays)
    return Polyhedron.from_h(HRep(dim=c.dim, rows=rows))


def _require(condition: bool, hypothesis: str) -> None:
    if not condition:
        raise HypothesisError(f"Hypothesis violated: {hypothesis}")


def _contains_zero(p: Polyhedron) -> bool:
    return contains_point(p, zeros(p.dim))


def _report(identity: PolarIdentity, lhs: Polyhedron, rhs: Polyhedron) -> IdentityReport:
    witness = inclusion_witness(rhs, lhs)
    if witness is None:
        witness = inclusion_witness(lhs, rhs)
    holds = witness is None
    if not holds:
        logger.warning(f"Polar identity {identity} failed, witness {witness}")
    return IdentityReport(identity=identity, holds=holds, witness=witness, lhs=lhs, rhs=rhs)


def check_polar_identity(
    identity: PolarIdentity | str,
    inputs: Sequence[Polyhedron],
    lam: Fraction | int | None = None,
) -> IdentityReport:
    """
    Evaluate both sides of a polar identity and compare them exactly.

    Parameters:
        identity: one of P1..P9 (see module docstring)
        inputs: the sets the identity is about; [A], [A, B], [A, C] or a finite family
        lam: the positive scalar for P3

    Returns:
        IdentityReport with a witness point in the symmetric difference on failure

    Raises:
        HypothesisError: naming the violated hypothesis
    """
    identity = PolarIdentity(identity)
    inputs = list(inputs)
    _require(len(inputs) >= 1, "at least one input set")
    _require(all(not p.is_empty for p in inputs), "input sets are nonempty")
    dims = {p.dim for p in inputs}
    _require(len(dims) == 1, "all inputs share one ambient dimension")

    if identity is PolarIdentity.P1:
        (a,) = inputs
        pair = PolarPair.of(a)
        lhs = pair.polar
        rhs = lhs if pair.is_consistent() else Polyhedron.empty(a.dim)
        return _report(identity, lhs, rhs)

    if identity is PolarIdentity.P2:
        a, b = inputs
        _require(includes(b, a), "A ⊆ B")
        lhs, rhs = one_sided_polar(a), one_sided_polar(b)
        witness = inclusion_witness(lhs, rhs)
        return IdentityReport(
            identity=identity, holds=witness is None, witness=witness, lhs=lhs, rhs=rhs
        )

    if identity is PolarIdentity.P3:
        (a,) = inputs
        _require(lam is not None and Fraction(lam) > 0, "λ > 0")
        lam = Fraction(lam)
        return _report(identity, one_sided_polar(scale(a, lam)), scale(one_sided_polar(a), 1 / lam))

    if identity is PolarIdentity.P4:
        union = convex_hull_union(inputs)
        lhs = one_sided_polar(union)
        rhs = reduce(intersect, [one_sided_polar(p) for p in inputs])
        return _report(identity, lhs, rhs)

    if identity is PolarIdentity.P5:
        (a,) = inputs
        return _report(identity, bipolar(a), hull_with_origin(a))

    if identity is PolarIdentity.P6:
        _require(all(_contains_zero(p) for p in inputs), "every A_i contains 0")
        lhs = one_sided_polar(reduce(intersect, inputs))
        rhs = convex_hull_union([one_sided_polar(p) for p in inputs])
        return _report(identity, lhs, rhs)

    if identity is PolarIdentity.P7:
        (c,) = inputs
        _require(is_cone(c), "C is a cone")
        lhs = one_sided_polar(c)
        if not is_cone(lhs):
            return IdentityReport(
                identity=identity, holds=False, witness=lhs.vertices[0], lhs=lhs, rhs=lhs
            )
        return _report(identity, lhs, negate(_dual_cone_from_rays(c)))

    a, c = inputs
    _require(_contains_zero(a), "A contains 0")
    _require(is_cone(c), "C is a cone")
    if identity is PolarIdentity.P8:
        lhs = one_sided_polar(intersect(a, c))
        rhs = minkowski_sum(one_sided_polar(a), one_sided_polar(c))
    else:
        lhs = one_sided_polar(minkowski_sum(a, c))
        rhs = intersect(one_sided_polar(a), one_sided_polar(c))
    return _report(identity, lhs, rhs)
