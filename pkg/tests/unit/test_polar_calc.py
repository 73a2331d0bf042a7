"""One-sided polars, dual cones and the polar identities."""

import pytest

from cone_duality.errors import EmptySetError, HypothesisError
from cone_duality.polar_calc import (
    PolarIdentity,
    PolarPair,
    bipolar,
    check_polar_identity,
    dual_cone,
    hull_with_origin,
    one_sided_polar,
)
from cone_duality.polyrat import Polyhedron, scale


def test_polar_of_l1_ball_is_linf_ball(l1_ball, linf_ball):
    assert one_sided_polar(l1_ball) == linf_ball
    assert one_sided_polar(linf_ball) == l1_ball


def test_polar_of_segment_is_half_plane():
    segment = Polyhedron.from_generators(2, [[0, 0], [2, 0]])
    assert one_sided_polar(segment) == Polyhedron.from_inequalities(2, [[2, 0, 1]])


def test_polar_of_orthant(orthant):
    assert one_sided_polar(orthant) == Polyhedron.from_inequalities(2, [[1, 0, 0], [0, 1, 0]])


def test_polar_of_origin_and_universe():
    assert one_sided_polar(Polyhedron.origin(2)) == Polyhedron.universe(2)
    assert one_sided_polar(Polyhedron.universe(2)) == Polyhedron.origin(2)


def test_polar_of_empty_set_raises():
    with pytest.raises(EmptySetError):
        one_sided_polar(Polyhedron.empty(2))


def test_polar_pair_rejects_wrong_polar(l1_ball, linf_ball, orthant):
    assert PolarPair.of(l1_ball).is_consistent()
    assert PolarPair.of(orthant).is_consistent()
    assert not PolarPair(primal=l1_ball, polar=scale(linf_ball, 2)).is_consistent()
    # the orthant's polar must not contain its own rays
    assert not PolarPair(primal=orthant, polar=orthant).is_consistent()
    # a polar missing the origin
    shifted = Polyhedron.from_generators(2, [[1, 1]])
    assert not PolarPair(primal=l1_ball, polar=shifted).is_consistent()


def test_bipolar_adds_origin(unit_square):
    shifted = Polyhedron.from_generators(2, [[1, 1], [2, 1]])
    assert bipolar(unit_square) == unit_square
    assert bipolar(shifted) == hull_with_origin(shifted)
    assert bipolar(shifted) == Polyhedron.from_generators(2, [[0, 0], [1, 1], [2, 1]])


def test_polar_pair_is_consistent(simplex):
    assert PolarPair.of(simplex).is_consistent()


def test_dual_cone_of_self_dual_cone():
    cone = Polyhedron.from_generators(2, [[0, 0]], [[1, 1], [1, -1]])
    assert dual_cone(cone) == cone


def test_dual_cone_of_half_line():
    half_line = Polyhedron.from_generators(2, [[0, 0]], [[1, 0]])
    assert dual_cone(half_line) == Polyhedron.from_inequalities(2, [[-1, 0, 0]])


def test_dual_cone_requires_cone(unit_square):
    with pytest.raises(HypothesisError):
        dual_cone(unit_square)


def test_scaling_identity(unit_square):
    report = check_polar_identity("P3", [unit_square], lam=3)
    assert report.holds
    assert report.witness is None


def test_intersection_with_cone(linf_ball, orthant):
    report = check_polar_identity(PolarIdentity.P8, [linf_ball, orthant])
    assert report.holds
    assert report.lhs == Polyhedron.from_inequalities(2, [[1, 0, 1], [0, 1, 1], [1, 1, 1]])


def test_sum_with_cone(linf_ball, orthant):
    report = check_polar_identity(PolarIdentity.P9, [linf_ball, orthant])
    assert report.holds
    assert report.lhs == Polyhedron.from_inequalities(
        2, [[1, 0, 0], [0, 1, 0], [-1, -1, 1]]
    )


@pytest.mark.parametrize("identity", ["P1", "P5"])
def test_single_set_identities(identity, unit_square, orthant):
    assert check_polar_identity(identity, [unit_square]).holds
    assert check_polar_identity(identity, [orthant]).holds


def test_union_and_intersection_identities(unit_square, l1_ball, linf_ball):
    assert check_polar_identity("P4", [unit_square, l1_ball]).holds
    assert check_polar_identity("P6", [l1_ball, unit_square, linf_ball]).holds


def test_antitone_and_cone_identities(l1_ball, linf_ball, orthant):
    assert check_polar_identity("P2", [l1_ball, linf_ball]).holds
    assert check_polar_identity("P7", [orthant]).holds


@pytest.mark.parametrize(
    "identity, inputs, lam",
    [
        ("P2", "not_included", None),
        ("P3", "square", 0),
        ("P3", "square", None),
        ("P7", "square", None),
        ("P8", "shifted_and_orthant", None),
        ("P6", "shifted_pair", None),
    ],
)
def test_violated_hypotheses_raise(identity, inputs, lam, unit_square, linf_ball, orthant):
    shifted = Polyhedron.from_generators(2, [[1, 1]])
    sets = {
        "not_included": [linf_ball, unit_square],
        "square": [unit_square],
        "shifted_and_orthant": [shifted, orthant],
        "shifted_pair": [shifted, unit_square],
    }[inputs]
    with pytest.raises(HypothesisError):
        check_polar_identity(identity, sets, lam=lam)


def test_mixed_dimensions_raise(unit_square):
    with pytest.raises(HypothesisError):
        check_polar_identity("P4", [unit_square, Polyhedron.origin(3)])
