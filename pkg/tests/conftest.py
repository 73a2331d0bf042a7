import os
from fractions import Fraction

import numpy as np
import pytest

from cone_duality.banach_sums import DirectSumInstance
from cone_duality.duality_props import Quadruple, grosberg_krein_quadruple
from cone_duality.polyrat import INF, Polyhedron

MOCK_DIR = os.path.join(os.path.dirname(__file__), "unit", "mock", "instances")


def box(dim: int, radius=1) -> Polyhedron:
    rows = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        rows += [e + [radius], [-a for a in e] + [radius]]
    return Polyhedron.from_inequalities(dim, rows)


def cross_polytope(dim: int) -> Polyhedron:
    vertices = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        vertices += [e, [-a for a in e]]
    return Polyhedron.from_generators(dim, vertices)


def ray_cone(dim: int, rays) -> Polyhedron:
    return Polyhedron.from_generators(dim, [[0] * dim], rays)


@pytest.fixture
def mock_dir() -> str:
    return MOCK_DIR


@pytest.fixture
def unit_square() -> Polyhedron:
    return Polyhedron.from_inequalities(2, [[1, 0, 1], [-1, 0, 0], [0, 1, 1], [0, -1, 0]])


@pytest.fixture
def linf_ball() -> Polyhedron:
    return box(2)


@pytest.fixture
def l1_ball() -> Polyhedron:
    return cross_polytope(2)


@pytest.fixture
def orthant() -> Polyhedron:
    return ray_cone(2, [[1, 0], [0, 1]])


@pytest.fixture
def simplex() -> Polyhedron:
    return Polyhedron.from_generators(2, [[0, 0], [1, 0], [0, 1]])


@pytest.fixture
def ordered_plane(linf_ball, orthant) -> Quadruple:
    """R^2 with the orthant order and the sup norm, encoded in R^2 + R^2."""
    return grosberg_krein_quadruple(linf_ball, orthant)


@pytest.fixture
def two_ray_instance(linf_ball) -> DirectSumInstance:
    """d = 2, cones spanned by e1 and e2, sup-norm base ball, p = 1."""
    return DirectSumInstance(
        d=2,
        m=2,
        base_ball=linf_ball,
        cones=(ray_cone(2, [[1, 0]]), ray_cone(2, [[0, 1]])),
        p=Fraction(1),
    )


@pytest.fixture
def orthant_pair_instance(linf_ball, orthant) -> DirectSumInstance:
    """d = 2, cones X+ and -X+, sup-norm base ball, p = inf."""
    negative = ray_cone(2, [[-1, 0], [0, -1]])
    return DirectSumInstance(d=2, m=2, base_ball=linf_ball, cones=(orthant, negative), p=INF)


@pytest.fixture
def half_line_instance() -> DirectSumInstance:
    """d = 1, two copies of the half-line, base ball [-1, 1], p = 1."""
    half_line = ray_cone(1, [[1]])
    return DirectSumInstance(
        d=1, m=2, base_ball=box(1), cones=(half_line, half_line), p=Fraction(1)
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240501)
