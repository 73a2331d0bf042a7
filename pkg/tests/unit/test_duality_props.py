"""Predicates, optimal constants and the duality statements on quadruples."""

from fractions import Fraction

import pytest

from cone_duality.duality_props import (
    DualityKind,
    Property,
    Quadruple,
    check_lemma33,
    grosberg_krein_quadruple,
    holds,
    is_additive,
    is_coadditive,
    is_conormal,
    is_normal,
    optimal_constant,
    polar_quadruple,
    property_witness,
    scale_quadruple,
    verify_general_duality,
)
from cone_duality.errors import DimensionMismatchError, HypothesisError
from cone_duality.polar_calc import one_sided_polar
from cone_duality.polyrat import INF, Polyhedron, contains_point, scale


def quadruple(C, D, B1, B2) -> Quadruple:
    return Quadruple(dim=C.dim, C=C, D=D, B1=B1, B2=B2)


def test_property_duals():
    assert Property.NORMAL.dual is Property.CONORMAL
    assert Property.CONORMAL.dual is Property.NORMAL
    assert Property.ADDITIVE.dual is Property.COADDITIVE
    assert Property.COADDITIVE.dual is Property.ADDITIVE


def test_ordered_plane_is_normal(ordered_plane):
    assert is_normal(ordered_plane)
    report = optimal_constant(Property.NORMAL, ordered_plane)
    assert report.alpha_star == 1
    assert report.attained


def test_ordered_plane_dual_constant(ordered_plane):
    report = optimal_constant(Property.CONORMAL, polar_quadruple(ordered_plane))
    assert report.alpha_star == 1


def test_ordered_plane_with_larger_ball(linf_ball, orthant):
    q = grosberg_krein_quadruple(linf_ball, orthant, alpha=2)
    assert optimal_constant("normal", q).alpha_star == Fraction(1, 2)


def test_conormal_example(simplex, linf_ball, orthant):
    q = quadruple(orthant, Polyhedron.origin(2), simplex, linf_ball)
    assert is_conormal(q)


def test_additive_with_trivial_cones(linf_ball):
    origin = Polyhedron.origin(2)
    q = quadruple(origin, origin, linf_ball, linf_ball)
    assert is_additive(q)
    assert optimal_constant(Property.ADDITIVE, q).alpha_star == 0


def test_coadditive_failure_has_witness(linf_ball, orthant):
    q = quadruple(Polyhedron.origin(2), orthant, linf_ball, linf_ball)
    assert not is_coadditive(q)
    witness = property_witness(Property.COADDITIVE, q)
    assert contains_point(linf_ball, witness)
    assert not contains_point(orthant, witness)
    assert optimal_constant(Property.COADDITIVE, q).alpha_star is INF


def test_conormal_constant_of_doubled_ball(linf_ball):
    q = quadruple(Polyhedron.universe(2), Polyhedron.origin(2), scale(linf_ball, 2), linf_ball)
    report = optimal_constant(Property.CONORMAL, q)
    assert report.alpha_star == 2
    assert report.attained


def test_normal_constant_infinite_for_full_cones(linf_ball):
    universe = Polyhedron.universe(2)
    q = quadruple(universe, universe, linf_ball, linf_ball)
    report = optimal_constant(Property.NORMAL, q)
    assert report.alpha_star is INF
    assert not report.attained
    assert report.witness is not None


def test_polar_quadruple_componentwise(ordered_plane):
    dual = polar_quadruple(ordered_plane)
    assert dual.B1 == one_sided_polar(ordered_plane.B1)
    assert dual.C == one_sided_polar(ordered_plane.C)
    assert polar_quadruple(dual) == ordered_plane


@pytest.mark.parametrize("kind", list(DualityKind))
def test_general_duality_on_ordered_plane(kind, ordered_plane):
    report = verify_general_duality(kind, ordered_plane)
    assert report.holds
    assert len(report.directions) == 2


def test_general_duality_when_property_fails(linf_ball, orthant):
    q = quadruple(Polyhedron.origin(2), orthant, linf_ball, linf_ball)
    report = verify_general_duality(DualityKind.ADDITIVITY, q)
    assert report.holds
    assert any(not d.primal_holds for d in report.directions)


@pytest.mark.parametrize("prop", list(Property))
@pytest.mark.parametrize("factor", [Fraction(1, 2), Fraction(3)])
def test_scaling_law(prop, factor, ordered_plane):
    scaled_b2 = scale_quadruple(ordered_plane, "B2", factor)
    shrunk_b1 = scale_quadruple(ordered_plane, "B1", 1 / factor)
    assert holds(prop, scaled_b2) == holds(prop, shrunk_b1)


def test_optimal_constant_is_a_threshold(ordered_plane):
    alpha = optimal_constant(Property.NORMAL, ordered_plane).alpha_star
    assert is_normal(scale_quadruple(ordered_plane, "B1", alpha))
    assert not is_normal(scale_quadruple(ordered_plane, "B1", alpha * Fraction(9, 10)))


def test_scale_quadruple_rejects_cones(ordered_plane):
    with pytest.raises(ValueError):
        scale_quadruple(ordered_plane, "C", 2)


@pytest.mark.parametrize("item", range(1, 9))
def test_lemma33_implications(item, ordered_plane):
    assert check_lemma33(item, ordered_plane).holds


def test_lemma33_vacuous_when_hypothesis_fails(linf_ball, orthant):
    q = quadruple(Polyhedron.origin(2), orthant, linf_ball, linf_ball)
    report = check_lemma33(4, q)
    assert not report.hypothesis
    assert report.holds


def test_lemma33_item_range(ordered_plane):
    with pytest.raises(ValueError):
        check_lemma33(9, ordered_plane)


def test_quadruple_validation(unit_square, linf_ball, orthant):
    shifted = Polyhedron.from_generators(2, [[1, 1], [2, 2]])
    with pytest.raises(HypothesisError):
        quadruple(unit_square, orthant, linf_ball, linf_ball)
    with pytest.raises(HypothesisError):
        quadruple(orthant, orthant, shifted, linf_ball)
    with pytest.raises(DimensionMismatchError):
        Quadruple(dim=2, C=orthant, D=orthant, B1=Polyhedron.origin(3), B2=linf_ball)
