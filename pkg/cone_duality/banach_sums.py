"""
Finite direct sums ℓp(Ω, X) over a polyhedral base norm.

X = Q^d carries the norm whose unit ball is a bounded, full-dimensional, symmetric polyhedron;
Ω = {1, ..., m} indexes a family of cones C_ω in X. Elements ξ of X^Ω live in Q^(m·d) with
ω-major coordinates: block ω occupies positions (ω-1)·d ... ω·d - 1.

The sets used by the direct-sum duality theorems are

    ⊕C   = {ξ : ξ_ω ∈ C_ω for all ω}
    S0   = {ξ : Σξ = 0}                     S1 = {ξ : ‖Σξ‖ ≤ 1}
    K∞   = {ξ : all blocks equal}           K1 = K∞ ∩ {‖const ξ‖ ≤ 1}
    ball_p = unit ball of ℓp(Ω, X)

and the four properties reduce to quadruples on Q^(m·d):

    normality     (⊕C, K∞, K1, ball_p)       ‖x‖ ≤ α‖ξ‖_p whenever x ∈ ∩(ξ_ω + C_ω)
    conormality   (⊕C, S0, S1, ball_p)       every x splits as Σξ, ξ ∈ ⊕C, ‖ξ‖_p ≤ α‖x‖
    additivity    (⊕C, {0}, ball_p, S1)      ‖ξ‖_p ≤ α‖Σξ‖ on ⊕C
    coadditivity  (⊕C, Q^(m·d), ball_p, K1)  some x ∈ ∩(ξ_ω - C_ω) has ‖x‖ ≤ α‖ξ‖_p

Exact mode covers p ∈ {1, ∞}. Other p are handled in floating point by sampled_lp_mode.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

import numpy as np
from loguru import logger
from tqdm import tqdm

from cone_duality.constants import PROGRESS_ENABLED
from cone_duality.duality_props import ConstantReport, Property, Quadruple, optimal_constant
from cone_duality.errors import DimensionMismatchError, HypothesisError, NotGeneratedError
from cone_duality.polar_calc import one_sided_polar
from cone_duality.polyrat import (
    INF,
    Extended,
    HRep,
    Infinity,
    LPStatus,
    Polyhedron,
    RatVector,
    VRep,
    gauge,
    inclusion_witness,
    is_bounded,
    is_cone,
    is_full_dimensional,
    maximize,
    minkowski_sum,
    negate,
)
from cone_duality.polyrat.rational import add, scale as scale_vector, unit, zeros

P = Fraction | Infinity


def conjugate_exponent(p) -> P:
    """Hölder conjugate q with 1/p + 1/q = 1."""
    if p is INF:
        return Fraction(1)
    p = Fraction(p)
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    if p == 1:
        return INF
    return p / (p - 1)


def is_exact_exponent(p) -> bool:
    return p is INF or p == 1


@dataclass(frozen=True)
class DirectSumInstance:
    d: int
    m: int
    base_ball: Polyhedron
    cones: tuple[Polyhedron, ...]
    p: P = Fraction(1)

    def __post_init__(self):
        if self.m < 1 or len(self.cones) != self.m:
            raise HypothesisError(f"Expected m = {self.m} >= 1 cones, got {len(self.cones)}")
        if self.base_ball.dim != self.d:
            raise DimensionMismatchError(f"Base ball has dim {self.base_ball.dim}, expected {self.d}")
        if not (is_bounded(self.base_ball) and is_full_dimensional(self.base_ball)):
            raise HypothesisError("The base ball must be bounded and full-dimensional")
        if negate(self.base_ball) != self.base_ball:
            raise HypothesisError("The base ball must be symmetric")
        for k, cone in enumerate(self.cones):
            if cone.dim != self.d:
                raise DimensionMismatchError(f"Cone {k + 1} has dim {cone.dim}, expected {self.d}")
            if not is_cone(cone):
                raise HypothesisError(f"Cone {k + 1} is not a cone")
        if self.p is not INF and Fraction(self.p) < 1:
            raise HypothesisError(f"p must be at least 1, got {self.p}")

    @property
    def exact(self) -> bool:
        return is_exact_exponent(self.p)

    @property
    def ambient_dim(self) -> int:
        return self.m * self.d

    def with_p(self, p) -> "DirectSumInstance":
        return DirectSumInstance(d=self.d, m=self.m, base_ball=self.base_ball, cones=self.cones, p=p)


@dataclass(frozen=True)
class SumSets:
    oplusC: Polyhedron
    S0: Polyhedron
    S1: Polyhedron
    Kinf: Polyhedron
    K1: Polyhedron
    ball_p: Polyhedron


def _blocks(xi: Sequence[Fraction], m: int) -> list[tuple]:
    if m < 1 or len(xi) % m:
        raise DimensionMismatchError(f"Vector of length {len(xi)} does not split into {m} blocks")
    d = len(xi) // m
    return [tuple(xi[k * d : (k + 1) * d]) for k in range(m)]


def sigma(xi: Sequence[Fraction], m: int) -> RatVector:
    """Blockwise sum Σ_ω ξ_ω."""
    blocks = _blocks(xi, m)
    total = blocks[0]
    for block in blocks[1:]:
        total = add(total, block)
    return tuple(total)


def const_part(xi: Sequence[Fraction], m: int) -> RatVector:
    """Average of the blocks, |Ω|⁻¹ Σ_ω ξ_ω."""
    return scale_vector(sigma(xi, m), Fraction(1, m))


def embed_delta(omega: int, x: Sequence[Fraction], m: int) -> RatVector:
    """δ_ω ⊗ x: x placed in block ω (1-based), zeros elsewhere."""
    if not 1 <= omega <= m:
        raise ValueError(f"Index ω = {omega} out of range 1..{m}")
    d = len(x)
    return zeros(d * (omega - 1)) + tuple(Fraction(a) for a in x) + zeros(d * (m - omega))


def embed_const(x: Sequence[Fraction], m: int) -> RatVector:
    """χ_Ω ⊗ x: x repeated in every block."""
    return tuple(Fraction(a) for a in x) * m


def _placed(a: RatVector, omega: int, m: int) -> RatVector:
    return embed_delta(omega, a, m)


def build_sets(inst: DirectSumInstance) -> SumSets:
    if not inst.exact:
        raise ValueError(f"Exact mode needs p in {{1, inf}}, got {inst.p}")
    d, m, n = inst.d, inst.m, inst.ambient_dim
    base_rows = inst.base_ball.h.rows

    cone_rows = [
        (_placed(a, k + 1, m), Fraction(0)) for k, cone in enumerate(inst.cones) for a, _ in cone.h.rows
    ]
    oplusC = Polyhedron.from_h(HRep(dim=n, rows=tuple(cone_rows)))

    sum_rows = []
    for j in range(d):
        e = embed_const(unit(d, j), m)
        sum_rows += [(e, Fraction(0)), (tuple(-a for a in e), Fraction(0))]
    S0 = Polyhedron.from_h(HRep(dim=n, rows=tuple(sum_rows)))
    S1 = Polyhedron.from_h(HRep(dim=n, rows=tuple((embed_const(a, m), b) for a, b in base_rows)))

    equal_rows = []
    for k in range(2, m + 1):
        for j in range(d):
            e = add(_placed(unit(d, j), k, m), tuple(-a for a in _placed(unit(d, j), 1, m)))
            equal_rows += [(e, Fraction(0)), (tuple(-a for a in e), Fraction(0))]
    Kinf = Polyhedron.from_h(HRep(dim=n, rows=tuple(equal_rows)))
    K1 = Polyhedron.from_h(
        HRep(dim=n, rows=tuple(equal_rows) + tuple((_placed(a, 1, m), b) for a, b in base_rows))
    )

    if inst.p is INF:
        rows = tuple((_placed(a, k, m), b) for k in range(1, m + 1) for a, b in base_rows)
        ball_p = Polyhedron.from_h(HRep(dim=n, rows=rows))
    else:
        vertices = tuple(embed_delta(k, v, m) for k in range(1, m + 1) for v in inst.base_ball.vertices)
        ball_p = Polyhedron.from_v(VRep(dim=n, vertices=vertices, rays=()))

    return SumSets(oplusC=oplusC, S0=S0, S1=S1, Kinf=Kinf, K1=K1, ball_p=ball_p)


def dual_instance(inst: DirectSumInstance) -> DirectSumInstance:
    """Polar base ball, polar cones C_ω°, conjugate exponent."""
    return DirectSumInstance(
        d=inst.d,
        m=inst.m,
        base_ball=one_sided_polar(inst.base_ball),
        cones=tuple(one_sided_polar(c) for c in inst.cones),
        p=conjugate_exponent(inst.p),
    )


def quadruple_for(prop: Property | str, inst: DirectSumInstance, sets: Optional[SumSets] = None) -> Quadruple:
    prop = Property(prop)
    sets = sets or build_sets(inst)
    n = inst.ambient_dim
    if prop is Property.NORMAL:
        return Quadruple(dim=n, C=sets.oplusC, D=sets.Kinf, B1=sets.K1, B2=sets.ball_p)
    if prop is Property.CONORMAL:
        return Quadruple(dim=n, C=sets.oplusC, D=sets.S0, B1=sets.S1, B2=sets.ball_p)
    if prop is Property.ADDITIVE:
        return Quadruple(dim=n, C=sets.oplusC, D=Polyhedron.origin(n), B1=sets.ball_p, B2=sets.S1)
    return Quadruple(dim=n, C=sets.oplusC, D=Polyhedron.universe(n), B1=sets.ball_p, B2=sets.K1)


@dataclass(frozen=True)
class PolarCheck:
    name: str
    holds: bool
    witness: Optional[RatVector]


@dataclass(frozen=True)
class Lemma44Report:
    checks: list[PolarCheck] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)


def check_lemma44(inst: DirectSumInstance) -> Lemma44Report:
    """
    Compare the polars of the six direct-sum sets with the sets of the dual instance:
    ⊕C ↦ ⊕C°, K∞ ↦ S0, K1 ↦ S1, S1 ↦ K1, S0 ↦ K∞, ball_p ↦ ball_q.
    """
    sets = build_sets(inst)
    dual_sets = build_sets(dual_instance(inst))
    pairs = [
        ("polar(oplusC) = oplusC°", sets.oplusC, dual_sets.oplusC),
        ("polar(Kinf) = S0", sets.Kinf, dual_sets.S0),
        ("polar(K1) = S1", sets.K1, dual_sets.S1),
        ("polar(S1) = K1", sets.S1, dual_sets.K1),
        ("polar(S0) = Kinf", sets.S0, dual_sets.Kinf),
        ("polar(ball_p) = ball_q", sets.ball_p, dual_sets.ball_p),
    ]
    report = Lemma44Report()
    for name, primal, expected in pairs:
        polar = one_sided_polar(primal)
        witness = inclusion_witness(expected, polar) or inclusion_witness(polar, expected)
        report.checks.append(PolarCheck(name=name, holds=witness is None, witness=witness))
        if witness is not None:
            logger.warning(f"{name} failed for d={inst.d}, m={inst.m}, p={inst.p}: witness {witness}")
    return report


def generates_space(inst: DirectSumInstance) -> bool:
    """Whether C_1 + ... + C_m is all of X, so that every x has a decomposition."""
    return reduce(minkowski_sum, inst.cones) == Polyhedron.universe(inst.d)


def norm_p(inst: DirectSumInstance, xi: Sequence[Fraction]) -> Extended | float:
    """‖ξ‖_p from the blockwise base gauges; exact for p ∈ {1, ∞}, float otherwise."""
    gauges = [gauge(inst.base_ball, block) for block in _blocks(tuple(Fraction(a) for a in xi), inst.m)]
    if inst.p is INF:
        return max(gauges)
    if inst.p == 1:
        return sum(gauges, Fraction(0))
    p = float(inst.p)
    return float(sum(float(g) ** p for g in gauges) ** (1 / p))


@dataclass(frozen=True)
class AndoDecomposition:
    xi: RatVector
    norm: Fraction


def ando_decompose(inst: DirectSumInstance, x: Sequence[Fraction]) -> AndoDecomposition:
    """
    Minimal ‖ξ‖_p over ξ ∈ ⊕C with Σξ = x.

    LP in (ξ, t): base rows a_i ξ_ω <= b_i t_ω (one t per block for p = 1, a shared t for
    p = ∞), cone rows on each block, Σξ = x; minimise Σt (p = 1) or t (p = ∞).

    Raises:
        NotGeneratedError: x is not a sum of elements of the cones
    """
    if not inst.exact:
        raise ValueError(f"Exact mode needs p in {{1, inf}}, got {inst.p}")
    x = tuple(Fraction(a) for a in x)
    if len(x) != inst.d:
        raise DimensionMismatchError(f"Point of length {len(x)}, expected {inst.d}")
    d, m, n = inst.d, inst.m, inst.ambient_dim
    n_t = m if inst.p == 1 else 1
    width = n + n_t

    def line(block: RatVector, omega: int, t_coefficient: Fraction = Fraction(0)):
        row = list(_placed(block, omega, m)) + [Fraction(0)] * n_t
        if t_coefficient:
            row[n + (omega - 1 if n_t == m else 0)] = t_coefficient
        return row

    A, b = [], []
    for omega in range(1, m + 1):
        for a, rhs in inst.base_ball.h.rows:
            A.append(line(a, omega, -rhs))
            b.append(Fraction(0))
        for a, _ in inst.cones[omega - 1].h.rows:
            A.append(line(a, omega))
            b.append(Fraction(0))
    for j in range(d):
        row = list(embed_const(unit(d, j), m)) + [Fraction(0)] * n_t
        A.append(row)
        b.append(x[j])
        A.append([-a for a in row])
        b.append(-x[j])
    for k in range(n_t):
        row = [Fraction(0)] * width
        row[n + k] = Fraction(-1)
        A.append(row)
        b.append(Fraction(0))

    objective = [Fraction(0)] * n + [Fraction(-1)] * n_t
    outcome = maximize(A, b, objective)
    if outcome.status is LPStatus.INFEASIBLE:
        raise NotGeneratedError(f"{list(x)} not generated by cone family")
    xi = outcome.point[:n]
    norm = norm_p(inst, xi)
    logger.debug(f"Ando decomposition of {x}: norm {norm}")
    return AndoDecomposition(xi=xi, norm=norm)


def constant_report(prop: Property | str, inst: DirectSumInstance) -> ConstantReport:
    if not inst.exact:
        raise ValueError(f"Exact mode needs p in {{1, inf}}, got {inst.p}")
    return optimal_constant(prop, quadruple_for(prop, inst))


def normality_constant(inst: DirectSumInstance) -> Extended:
    return constant_report(Property.NORMAL, inst).alpha_star


def conormality_constant(inst: DirectSumInstance) -> Extended:
    return constant_report(Property.CONORMAL, inst).alpha_star


def additivity_constant(inst: DirectSumInstance) -> Extended:
    return constant_report(Property.ADDITIVE, inst).alpha_star


def coadditivity_constant(inst: DirectSumInstance) -> Extended:
    return constant_report(Property.COADDITIVE, inst).alpha_star


@dataclass(frozen=True)
class ConstantPair:
    primal_property: Property
    dual_property: Property
    primal: ConstantReport
    dual: ConstantReport

    @property
    def agrees(self) -> bool:
        return self.primal.alpha_star == self.dual.alpha_star


@dataclass(frozen=True)
class ConstantDualityReport:
    name: str
    p: P
    q: P
    pairs: list[ConstantPair] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(pair.agrees for pair in self.pairs)


def _verify_pairs(
    name: str, inst: DirectSumInstance, properties: Sequence[Property]
) -> ConstantDualityReport:
    dual = dual_instance(inst)
    report = ConstantDualityReport(name=name, p=inst.p, q=dual.p)
    for prop in properties:
        report.pairs.append(
            ConstantPair(
                primal_property=prop,
                dual_property=prop.dual,
                primal=constant_report(prop, inst),
                dual=constant_report(prop.dual, dual),
            )
        )
    if not report.holds:
        logger.warning(f"{name}: primal and dual constants differ for d={inst.d}, m={inst.m}")
    return report


def verify_cor47(inst: DirectSumInstance) -> ConstantDualityReport:
    """Normality of ℓp(Ω, X) against conormality of ℓq(Ω, X'), and conormality against normality."""
    return _verify_pairs("normality duality", inst, (Property.NORMAL, Property.CONORMAL))


def verify_cor49(inst: DirectSumInstance) -> ConstantDualityReport:
    """Additivity of ℓp(Ω, X) against coadditivity of ℓq(Ω, X'), and the converse pairing."""
    return _verify_pairs("additivity duality", inst, (Property.ADDITIVE, Property.COADDITIVE))


@dataclass(frozen=True)
class SampledProperty:
    property: Property
    bound: float
    max_ratio: float
    samples: int
    violations: int


@dataclass(frozen=True)
class SampledReport:
    p: float
    q: float
    seed: int
    tol: float
    results: list[SampledProperty] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(r.violations == 0 for r in self.results)


def _float_gauge(rows: np.ndarray, rhs: np.ndarray, x: np.ndarray) -> float:
    return float(max(0.0, np.max(rows @ x / rhs)))


def _float_norm(values: Sequence[float], p: float) -> float:
    return float(np.sum(np.asarray(values) ** p) ** (1.0 / p))


def _to_float(value: Extended) -> float:
    return float("inf") if value is INF else float(value)


def _random_cone_element(rng: np.random.Generator, cone: Polyhedron, d: int) -> np.ndarray:
    if not cone.rays:
        return np.zeros(d)
    rays = np.array([[float(a) for a in r] for r in cone.rays])
    weights = rng.exponential(size=len(rays)) * (rng.random(len(rays)) < 0.7)
    return weights @ rays


def _coadditive_norm(inst: DirectSumInstance, xi: RatVector) -> Optional[Fraction]:
    """min ‖x‖ over x ∈ ∩(ξ_ω - C_ω), exactly."""
    d, m = inst.d, inst.m
    blocks = _blocks(xi, m)
    A, b = [], []
    for a, rhs in inst.base_ball.h.rows:
        A.append(list(a) + [-rhs])
        b.append(Fraction(0))
    for omega, cone in enumerate(inst.cones):
        # ξ_ω - x ∈ C_ω  <=>  -g.x <= -g.ξ_ω for each cone row g
        for g, _ in cone.h.rows:
            A.append([-a for a in g] + [Fraction(0)])
            b.append(-sum((ga * xa for ga, xa in zip(g, blocks[omega])), Fraction(0)))
    A.append([Fraction(0)] * d + [Fraction(-1)])
    b.append(Fraction(0))
    outcome = maximize(A, b, [Fraction(0)] * d + [Fraction(-1)])
    if outcome.status is not LPStatus.OPTIMAL:
        return None
    return -outcome.value


def sampled_lp_mode(
    inst: DirectSumInstance, trials: int, seed: int, tol: float = 1e-9
) -> SampledReport:
    """
    Monte-Carlo check of the ℓp inequalities for 1 < p < ∞.

    The exact p = 1 and p = ∞ constants α₁, α∞ bound the ℓp constants through Hölder:
    normality and coadditivity by min(α∞, m^(1/q)·α₁), additivity and conormality by
    min(α₁, m^(1/p)·α∞). Each trial samples a feasible configuration and records the ratio.
    """
    if inst.exact:
        raise ValueError("sampled_lp_mode is for 1 < p < inf; use the exact constants instead")
    p = float(inst.p)
    q = p / (p - 1)
    m, d = inst.m, inst.d
    rng = np.random.default_rng(seed)
    one, infinity = inst.with_p(Fraction(1)), inst.with_p(INF)

    bounds = {}
    for prop in Property:
        alpha_1 = _to_float(constant_report(prop, one).alpha_star)
        alpha_inf = _to_float(constant_report(prop, infinity).alpha_star)
        if prop in (Property.NORMAL, Property.COADDITIVE):
            bounds[prop] = min(alpha_inf, m ** (1 / q) * alpha_1)
        else:
            bounds[prop] = min(alpha_1, m ** (1 / p) * alpha_inf)

    rows = np.array([[float(a) for a in a_row] for a_row, _ in inst.base_ball.h.rows])
    rhs = np.array([float(b) for _, b in inst.base_ball.h.rows])

    def norm(x):
        return _float_gauge(rows, rhs, x)

    def block_norm(blocks):
        return _float_norm([norm(block) for block in blocks], p)

    ratios = {prop: [] for prop in Property}
    iterator = tqdm(range(trials), desc="Sampling lp inequalities", disable=not PROGRESS_ENABLED)
    for _ in iterator:
        # normality: x ∈ ξ_ω + C_ω
        x = rng.normal(size=d)
        xi = [x - _random_cone_element(rng, cone, d) for cone in inst.cones]
        denominator = block_norm(xi)
        if denominator > 1e-12:
            ratios[Property.NORMAL].append(norm(x) / denominator)

        # additivity: ξ ∈ ⊕C
        xi = [_random_cone_element(rng, cone, d) for cone in inst.cones]
        denominator = norm(np.sum(xi, axis=0))
        if denominator > 1e-12:
            ratios[Property.ADDITIVE].append(block_norm(xi) / denominator)

        # conormality: best of the exact p = 1 and p = ∞ decompositions at a rational point
        point = tuple(Fraction(int(v)) for v in rng.integers(-5, 6, size=d))
        if any(point):
            try:
                candidates = []
                for exact in (one, infinity):
                    decomposition = ando_decompose(exact, point)
                    blocks = _blocks([float(a) for a in decomposition.xi], m)
                    candidates.append(block_norm([np.array(b) for b in blocks]))
                ratios[Property.CONORMAL].append(
                    min(candidates) / norm(np.array([float(a) for a in point]))
                )
            except NotGeneratedError:
                pass

        # coadditivity: smallest common lower bound of a rational ξ
        xi_point = tuple(Fraction(int(v)) for v in rng.integers(-5, 6, size=m * d))
        if any(xi_point):
            value = _coadditive_norm(inst, xi_point)
            if value is not None:
                blocks = _blocks([float(a) for a in xi_point], m)
                ratios[Property.COADDITIVE].append(
                    float(value) / block_norm([np.array(b) for b in blocks])
                )

    report = SampledReport(p=p, q=q, seed=seed, tol=tol)
    for prop in Property:
        observed = ratios[prop]
        bound = bounds[prop]
        violations = sum(1 for r in observed if r > bound * (1 + tol))
        report.results.append(
            SampledProperty(
                property=prop,
                bound=bound,
                max_ratio=max(observed, default=0.0),
                samples=len(observed),
                violations=violations,
            )
        )
        logger.info(
            f"Sampled {prop} (p={p:g}): max ratio {max(observed, default=0.0):.6g}, "
            f"bound {bound:.6g}, {violations} violations over {len(observed)} samples"
        )
    return report
