"""Randomized general duality on quadruples."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from strategies import quadruples

from cone_duality.duality_props import (
    DualityKind,
    Property,
    check_lemma33,
    holds,
    optimal_constant,
    polar_quadruple,
    scale_quadruple,
)
from cone_duality.polar_calc import one_sided_polar
from cone_duality.polyrat import INF

pytestmark = pytest.mark.integration


@settings(max_examples=100)
@given(q=quadruples())
def test_polar_quadruple_componentwise(q):
    dual = polar_quadruple(q)
    for name in ("C", "D", "B1", "B2"):
        assert getattr(dual, name) == one_sided_polar(getattr(q, name))


@pytest.mark.parametrize("kind", list(DualityKind))
@settings(max_examples=100)
@given(q=quadruples())
def test_properties_dualize(kind, q):
    dual = polar_quadruple(q)
    properties = (
        (Property.NORMAL, Property.CONORMAL)
        if kind is DualityKind.NORMALITY
        else (Property.ADDITIVE, Property.COADDITIVE)
    )
    for prop in properties:
        assert holds(prop, q) == holds(prop.dual, dual)
        assert optimal_constant(prop, q).alpha_star == optimal_constant(prop.dual, dual).alpha_star


@settings(max_examples=200)
@given(q=quadruples())
def test_one_way_implications(q):
    for item in range(1, 9):
        assert check_lemma33(item, q).holds


SCALED_COMPONENT = {
    Property.NORMAL: "B1",
    Property.ADDITIVE: "B1",
    Property.CONORMAL: "B2",
    Property.COADDITIVE: "B2",
}


@pytest.mark.parametrize("prop", list(Property))
@settings(max_examples=60)
@given(q=quadruples())
def test_optimal_constant_is_a_threshold(prop, q):
    report = optimal_constant(prop, q)
    assume(report.alpha_star is not INF and report.alpha_star > 0 and report.attained)
    component = SCALED_COMPONENT[prop]
    assert holds(prop, scale_quadruple(q, component, report.alpha_star))
    assert not holds(prop, scale_quadruple(q, component, report.alpha_star * Fraction(9, 10)))


factors = st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4)


@pytest.mark.parametrize("prop", list(Property))
@settings(max_examples=60)
@given(q=quadruples(), factor=factors)
def test_scaling_moves_between_bodies(prop, q, factor):
    scaled_b2 = scale_quadruple(q, "B2", factor)
    shrunk_b1 = scale_quadruple(q, "B1", 1 / factor)
    assert holds(prop, scaled_b2) == holds(prop, shrunk_b1)
