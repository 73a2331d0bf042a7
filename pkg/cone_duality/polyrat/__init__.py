from cone_duality.polyrat.lp import LPOutcome, LPStatus, Sense, lp_solve, maximize, verify_certificate
from cone_duality.polyrat.polyhedron import (
    HRep,
    Polyhedron,
    VRep,
    contains_point,
    convex_hull_union,
    gauge,
    h_to_v,
    inclusion_witness,
    includes,
    intersect,
    is_bounded,
    is_cone,
    is_full_dimensional,
    minkowski_sum,
    negate,
    recession_cone,
    scale,
    v_to_h,
)
from cone_duality.polyrat.rational import (
    INF,
    Extended,
    Infinity,
    Rational,
    RatVector,
    format_rational,
    parse_extended,
    parse_rational,
    vector,
)
