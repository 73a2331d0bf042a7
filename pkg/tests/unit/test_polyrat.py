"""Exact polyhedra, conversions and the rational LP."""

from fractions import Fraction

import pytest

from cone_duality.errors import DimensionMismatchError, HypothesisError
from cone_duality.polyrat import (
    INF,
    HRep,
    LPStatus,
    Polyhedron,
    VRep,
    contains_point,
    format_rational,
    gauge,
    h_to_v,
    includes,
    inclusion_witness,
    intersect,
    is_bounded,
    is_cone,
    is_full_dimensional,
    lp_solve,
    maximize,
    minkowski_sum,
    negate,
    parse_extended,
    parse_rational,
    recession_cone,
    scale,
    v_to_h,
    verify_certificate,
)
from cone_duality.polyrat.polyhedron import echelon_form


def square_system() -> HRep:
    return HRep.from_rows(2, [[1, 0, 1], [-1, 0, 0], [0, 1, 1], [0, -1, 0]])


def test_maximize_over_square():
    outcome = lp_solve([1, 1], "max", square_system())
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.value == 2
    assert outcome.point == (1, 1)
    assert verify_certificate(outcome, [1, 1], "max", square_system())


def test_minimize_reports_true_minimum():
    outcome = lp_solve([1, 1], "min", square_system())
    assert outcome.status is LPStatus.OPTIMAL
    assert outcome.value == 0
    assert verify_certificate(outcome, [1, 1], "min", square_system())


def test_infeasible_system_has_farkas_certificate():
    system = HRep.from_rows(1, [[1, -1], [-1, 0]])
    outcome = lp_solve([1], "max", system)
    assert outcome.status is LPStatus.INFEASIBLE
    assert outcome.point is None
    assert verify_certificate(outcome, [1], "max", system)


def test_unbounded_system_returns_ray():
    system = HRep.from_rows(1, [[-1, 0]])
    outcome = lp_solve([1], "max", system)
    assert outcome.status is LPStatus.UNBOUNDED
    assert outcome.certificate[0] > 0
    assert verify_certificate(outcome, [1], "max", system)


def test_objective_dimension_checked():
    with pytest.raises(DimensionMismatchError):
        lp_solve([1, 1, 1], "max", square_system())


def test_h_to_v_square():
    v = h_to_v(square_system())
    assert set(v.vertices) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert v.rays == ()


def test_v_to_h_cross_polytope():
    vertices = ((1, 0), (-1, 0), (0, 1), (0, -1))
    h = v_to_h(VRep(dim=2, vertices=tuple(tuple(map(Fraction, x)) for x in vertices), rays=()))
    expected = {((1, 1), 1), ((1, -1), 1), ((-1, 1), 1), ((-1, -1), 1)}
    assert set(h.rows) == expected
    assert list(h.rows) == sorted(h.rows)


def test_v_to_h_half_line():
    p = Polyhedron.from_generators(2, [[0, 0]], [[1, 0]])
    assert p == Polyhedron.from_inequalities(2, [[0, 1, 0], [0, -1, 0], [-1, 0, 0]])
    assert len(p.equalities()) == 2


def test_h_to_v_strip_has_lineality():
    strip = HRep.from_rows(2, [[1, 1, 2], [-1, -1, 0]])
    v = h_to_v(strip)
    assert set(v.vertices) == {(0, 0), (1, 1)}
    assert set(v.rays) == {(1, -1), (-1, 1)}


def test_redundant_generators_are_dropped(unit_square):
    half = Fraction(1, 2)
    p = Polyhedron.from_generators(
        2, [[0, 0], [1, 0], [0, 1], [1, 1], [half, half], [half, 0]]
    )
    assert p == unit_square
    assert len(p.h.rows) == 4


def test_redundant_inequalities_are_dropped(unit_square):
    p = Polyhedron.from_inequalities(
        2, [[1, 0, 1], [-1, 0, 0], [0, 1, 1], [0, -1, 0], [1, 1, 3], [1, 0, 5]]
    )
    assert p == unit_square


def test_echelon_form_is_exact():
    rows, pivots = echelon_form([[2, 4, 1], [1, 2, Fraction(1, 3)]])
    assert pivots == [0, 2]
    assert rows == [(1, 2, 0), (0, 0, 1)]
    assert echelon_form([]) == ([], [])


def test_empty_polyhedron():
    p = Polyhedron.from_inequalities(1, [[1, -1], [-1, 0]])
    assert p.is_empty
    assert p == Polyhedron.empty(1)
    assert p.vertices == () and p.rays == ()


def test_round_trip_is_canonical(unit_square):
    again = Polyhedron.from_v(unit_square.v)
    assert again == unit_square
    assert Polyhedron.from_h(unit_square.h) == unit_square


def test_minkowski_sum_and_intersection(unit_square, orthant):
    assert minkowski_sum(unit_square, orthant) == Polyhedron.from_inequalities(
        2, [[-1, 0, 0], [0, -1, 0]]
    )
    assert intersect(unit_square, negate(orthant)) == Polyhedron.origin(2)


def test_sum_dimension_mismatch(unit_square):
    with pytest.raises(DimensionMismatchError):
        minkowski_sum(unit_square, Polyhedron.origin(3))


def test_inclusion_with_witness(unit_square, linf_ball, l1_ball):
    assert includes(linf_ball, unit_square)
    assert includes(linf_ball, l1_ball)
    witness = inclusion_witness(l1_ball, linf_ball)
    assert witness is not None
    assert not contains_point(l1_ball, witness)
    assert contains_point(linf_ball, witness)


def test_scale_and_negate(unit_square):
    doubled = scale(unit_square, 2)
    assert set(doubled.vertices) == {(0, 0), (2, 0), (0, 2), (2, 2)}
    assert negate(negate(unit_square)) == unit_square
    with pytest.raises(HypothesisError):
        scale(unit_square, 0)


def test_shape_predicates(unit_square, orthant, linf_ball):
    assert is_cone(orthant) and not is_cone(unit_square)
    assert is_bounded(linf_ball) and not is_bounded(orthant)
    assert is_full_dimensional(linf_ball)
    assert not is_full_dimensional(Polyhedron.from_generators(2, [[0, 0], [1, 0]]))
    assert recession_cone(minkowski_sum(unit_square, orthant)) == orthant


@pytest.mark.parametrize(
    "ball, x, expected",
    [
        ("linf", (2, 1), Fraction(2)),
        ("l1", (1, 1), Fraction(2)),
        ("l1", (Fraction(1, 2), 0), Fraction(1, 2)),
        ("linf", (0, 0), Fraction(0)),
    ],
)
def test_gauge(ball, x, expected, linf_ball, l1_ball):
    b = {"linf": linf_ball, "l1": l1_ball}[ball]
    assert gauge(b, tuple(Fraction(a) for a in x)) == expected


def test_gauge_infinite_outside_cone(orthant):
    assert gauge(orthant, (Fraction(1), Fraction(0))) == 0
    assert gauge(orthant, (Fraction(-1), Fraction(0))) is INF


def test_gauge_requires_origin(unit_square):
    shifted = minkowski_sum(unit_square, Polyhedron.from_generators(2, [[1, 1]]))
    with pytest.raises(HypothesisError):
        gauge(shifted, (Fraction(1), Fraction(1)))


def test_parse_and_format_rationals():
    assert parse_rational("-2/7") == Fraction(-2, 7)
    assert parse_rational(3) == 3
    assert parse_extended("inf") is INF
    assert format_rational(Fraction(3, 1)) == 3
    assert format_rational(Fraction(-2, 7)) == "-2/7"
    assert format_rational(INF) == "inf"
    for bad in (True, 0.5, "abc", "1/0"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_infinity_ordering():
    assert INF > Fraction(10**9)
    assert not INF < Fraction(1)
    assert max([Fraction(3), INF, Fraction(1)]) is INF
    assert INF == INF
