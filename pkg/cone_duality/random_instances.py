"""
Seeded generators of small rational instances for the randomized suites, the selftest
and scripts/generate_instances.py.
"""

from fractions import Fraction
from typing import Optional

import numpy as np

from cone_duality.banach_sums import DirectSumInstance
from cone_duality.constants import INTEGER_RANGE
from cone_duality.duality_props import Quadruple
from cone_duality.polar_calc import PolarIdentity
from cone_duality.polyrat import INF, Polyhedron, RatVector, VRep
from cone_duality.polyrat.rational import is_zero, neg, unit, zeros


def random_rational(rng: np.random.Generator) -> Fraction:
    low, high = INTEGER_RANGE
    return Fraction(int(rng.integers(low, high + 1)), int(rng.choice([1, 1, 2, 3])))


def random_vector(rng: np.random.Generator, dim: int, nonzero: bool = False) -> RatVector:
    while True:
        v = tuple(random_rational(rng) for _ in range(dim))
        if not nonzero or not is_zero(v):
            return v


def random_polyhedron(
    rng: np.random.Generator,
    dim: int,
    contains_origin: bool = False,
    bounded: bool = False,
    max_vertices: int = 4,
    max_rays: int = 2,
) -> Polyhedron:
    vertices = [random_vector(rng, dim) for _ in range(int(rng.integers(1, max_vertices + 1)))]
    if contains_origin:
        vertices.append(zeros(dim))
    rays = []
    if not bounded:
        rays = [random_vector(rng, dim, nonzero=True) for _ in range(int(rng.integers(0, max_rays + 1)))]
    return Polyhedron.from_v(VRep(dim=dim, vertices=tuple(vertices), rays=tuple(rays)))


def random_cone(rng: np.random.Generator, dim: int, max_rays: Optional[int] = None) -> Polyhedron:
    """Cone spanned by 0..max_rays random rays; the zero cone and half-spaces both occur."""
    max_rays = dim + 1 if max_rays is None else max_rays
    rays = tuple(random_vector(rng, dim, nonzero=True) for _ in range(int(rng.integers(0, max_rays + 1))))
    return Polyhedron.from_v(VRep(dim=dim, vertices=(zeros(dim),), rays=rays))


def random_symmetric_ball(rng: np.random.Generator, dim: int, extra: int = 2) -> Polyhedron:
    """Symmetric polytope with ±e_i (rationally scaled) and ±v for a few random v."""
    vertices = []
    for i in range(dim):
        scale = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3)))
        vertices += [tuple(a * scale for a in unit(dim, i)), tuple(-a * scale for a in unit(dim, i))]
    for _ in range(int(rng.integers(0, extra + 1))):
        v = random_vector(rng, dim, nonzero=True)
        vertices += [v, neg(v)]
    return Polyhedron.from_v(VRep(dim=dim, vertices=tuple(vertices), rays=()))


def polar_identity_inputs(
    rng: np.random.Generator, identity: PolarIdentity | str, dim: int
) -> tuple[list[Polyhedron], Optional[Fraction]]:
    """Inputs satisfying the hypotheses of a polar identity, and λ for P3."""
    identity = PolarIdentity(identity)
    if identity in (PolarIdentity.P1, PolarIdentity.P5):
        return [random_polyhedron(rng, dim)], None
    if identity is PolarIdentity.P2:
        a = random_polyhedron(rng, dim)
        extra = random_polyhedron(rng, dim)
        b = Polyhedron.from_v(
            VRep(dim=dim, vertices=a.vertices + extra.vertices, rays=a.rays + extra.rays)
        )
        return [a, b], None
    if identity is PolarIdentity.P3:
        lam = Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4)))
        return [random_polyhedron(rng, dim)], lam
    if identity is PolarIdentity.P4:
        k = int(rng.integers(2, 4))
        return [random_polyhedron(rng, dim) for _ in range(k)], None
    if identity is PolarIdentity.P6:
        k = int(rng.integers(2, 4))
        return [random_polyhedron(rng, dim, contains_origin=True) for _ in range(k)], None
    if identity is PolarIdentity.P7:
        return [random_cone(rng, dim)], None
    return [random_polyhedron(rng, dim, contains_origin=True), random_cone(rng, dim)], None


def random_quadruple(rng: np.random.Generator, dim: int) -> Quadruple:
    return Quadruple(
        dim=dim,
        C=random_cone(rng, dim),
        D=random_cone(rng, dim),
        B1=random_polyhedron(rng, dim, contains_origin=True, max_vertices=3, max_rays=1),
        B2=random_polyhedron(rng, dim, contains_origin=True, max_vertices=3, max_rays=1),
    )


def random_instance(
    rng: np.random.Generator, d: int, m: int, p=None, max_rays: Optional[int] = None
) -> DirectSumInstance:
    if p is None:
        p = INF if rng.random() < 0.5 else Fraction(1)
    return DirectSumInstance(
        d=d,
        m=m,
        base_ball=random_symmetric_ball(rng, d, extra=1),
        cones=tuple(random_cone(rng, d, max_rays=max_rays) for _ in range(m)),
        p=p,
    )


INFEASIBLE_SHAPES = ("opposing", "box_cut", "combination")


def _box(x0: RatVector, radius: int) -> tuple[list[list[Fraction]], list[Fraction]]:
    A, b = [], []
    for j in range(len(x0)):
        e = list(unit(len(x0), j))
        A += [e, [-a for a in e]]
        b += [x0[j] + radius, -x0[j] + radius]
    return A, b


def random_lp(
    rng: np.random.Generator,
    rows: int,
    columns: int,
    feasible: bool = True,
    shape: Optional[str] = None,
) -> tuple[list[list[Fraction]], list[Fraction], list[Fraction]]:
    """
    A, b, c for max c.x subject to A x <= b.

    Feasible systems are built around a random point with nonnegative slack, and capped by
    a box so that they are bounded as well. Infeasible systems take one of INFEASIBLE_SHAPES
    (random when shape is None):

        opposing     a.x <= -1 and -a.x <= 0 appended to random rows
        box_cut      a feasible boxed system plus a cut below the minimum of a.x on the box
        combination  rows whose positive combination y reads 0 <= y.b < 0, y dense
    """
    A = [list(random_vector(rng, columns)) for _ in range(rows)]
    x0 = random_vector(rng, columns)
    b = [sum((a * x for a, x in zip(row, x0)), Fraction(0)) + abs(random_rational(rng)) for row in A]
    c = list(random_vector(rng, columns))
    if feasible:
        box_A, box_b = _box(x0, 10)
        return A + box_A, b + box_b, c

    shape = shape or str(rng.choice(INFEASIBLE_SHAPES))
    if shape not in INFEASIBLE_SHAPES:
        raise ValueError(f"Unknown infeasible shape {shape}, expected one of {INFEASIBLE_SHAPES}")
    if shape == "opposing":
        row = list(random_vector(rng, columns, nonzero=True))
        A += [row, [-a for a in row]]
        b += [Fraction(-1), Fraction(0)]
    elif shape == "box_cut":
        box_A, box_b = _box(x0, 10)
        A += box_A
        b += box_b
        row = random_vector(rng, columns, nonzero=True)
        lowest = sum((a * x - 10 * abs(a) for a, x in zip(row, x0)), Fraction(0))
        A.append(list(row))
        b.append(lowest - 1 - abs(random_rational(rng)))
    else:
        weights = [Fraction(int(rng.integers(1, 4))) for _ in range(rows)]
        total = [sum((w * a[j] for w, a in zip(weights, A)), Fraction(0)) for j in range(columns)]
        slack = sum((w * r for w, r in zip(weights, b)), Fraction(0))
        last = Fraction(int(rng.integers(1, 4)))
        A.append([-t / last for t in total])
        b.append((-slack - 1 - abs(random_rational(rng))) / last)
    order = rng.permutation(len(A))
    return [A[i] for i in order], [b[i] for i in order], c
