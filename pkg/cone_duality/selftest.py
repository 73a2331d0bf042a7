"""
Exact identity suites run by `conedual selftest`.

Every suite draws its cases from cone_duality.random_instances with a seed derived from the
master seed, so a failure is reproducible from the report alone.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from loguru import logger
from tqdm import tqdm

from cone_duality.banach_sums import (
    ando_decompose,
    check_lemma44,
    conormality_constant,
    generates_space,
    verify_cor47,
    verify_cor49,
)
from cone_duality.constants import PROGRESS_ENABLED
from cone_duality.duality_props import (
    DualityKind,
    Property,
    grosberg_krein_quadruple,
    optimal_constant,
    polar_quadruple,
    verify_general_duality,
)
from cone_duality.polar_calc import PolarIdentity, bipolar, check_polar_identity, hull_with_origin
from cone_duality.polyrat import INF, HRep, Polyhedron, gauge, maximize, verify_certificate
from cone_duality.random_instances import (
    polar_identity_inputs,
    random_instance,
    random_lp,
    random_polyhedron,
    random_quadruple,
    random_vector,
)

SELFTEST_CASES = 20


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: Optional[str] = None

    @property
    def holds(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, description: str) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = description
            logger.warning(f"{self.name}: failed on {description}")


@dataclass
class SelftestReport:
    seed: int
    cases: int
    suites: list[SuiteResult] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.suites)


def polar_identity_suite(rng: np.random.Generator, cases: int) -> list[SuiteResult]:
    results = []
    for identity in PolarIdentity:
        result = SuiteResult(name=f"polar identity {identity}")
        for k in range(cases):
            dim = int(rng.integers(2, 5))
            inputs, lam = polar_identity_inputs(rng, identity, dim)
            report = check_polar_identity(identity, inputs, lam=lam)
            result.record(report.holds, f"case {k}, dim {dim}, witness {report.witness}")
        results.append(result)
    return results


def bipolar_suite(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="bipolar")
    for k in range(cases):
        dim = int(rng.integers(2, 5))
        with_origin = random_polyhedron(rng, dim, contains_origin=True)
        result.record(bipolar(with_origin) == with_origin, f"case {k} (contains 0), dim {dim}")
        arbitrary = random_polyhedron(rng, dim)
        result.record(bipolar(arbitrary) == hull_with_origin(arbitrary), f"case {k}, dim {dim}")
    return result


def general_duality_suite(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="general duality")
    for k in range(cases):
        dim = int(rng.integers(1, 4))
        q = random_quadruple(rng, dim)
        for kind in DualityKind:
            report = verify_general_duality(kind, q)
            result.record(report.holds, f"case {k}, {kind}, dim {dim}")
    return result


def grosberg_krein_suite() -> SuiteResult:
    result = SuiteResult(name="ordered plane")
    ball = Polyhedron.from_inequalities(2, [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]])
    orthant = Polyhedron.from_inequalities(2, [[-1, 0, 0], [0, -1, 0]])
    q = grosberg_krein_quadruple(ball, orthant)
    normal = optimal_constant(Property.NORMAL, q).alpha_star
    conormal = optimal_constant(Property.CONORMAL, polar_quadruple(q)).alpha_star
    result.record(normal == 1, f"normality constant {normal}")
    result.record(conormal == 1, f"dual decomposition constant {conormal}")
    return result


def direct_sum_suite(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="direct sums")
    for k in range(cases):
        d, m = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        inst = random_instance(rng, d, m)
        description = f"case {k}, d={d}, m={m}, p={inst.p}"
        result.record(check_lemma44(inst).holds, f"{description}: polar correspondence")
        result.record(verify_cor47(inst).holds, f"{description}: normality duality")
        result.record(verify_cor49(inst).holds, f"{description}: additivity duality")
    return result


def ando_suite(rng: np.random.Generator, cases: int, points: int = 5) -> SuiteResult:
    result = SuiteResult(name="ando decomposition")
    for k in range(cases):
        d, m = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        inst = random_instance(rng, d, m)
        if not generates_space(inst):
            continue
        alpha = conormality_constant(inst)
        for _ in range(points):
            x = random_vector(rng, d)
            norm = ando_decompose(inst, x).norm
            ok = alpha is not INF and norm <= alpha * gauge(inst.base_ball, x)
            result.record(ok, f"case {k}, x={x}, norm {norm}, constant {alpha}")
        attained = max(ando_decompose(inst, v).norm for v in inst.base_ball.vertices)
        result.record(attained == alpha, f"case {k}: vertex maximum {attained} != {alpha}")
    return result


def lp_suite(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="lp certificates")
    for k in range(cases):
        rows, columns = int(rng.integers(1, 6)), int(rng.integers(1, 5))
        feasible = bool(rng.random() < 0.8)
        A, b, c = random_lp(rng, rows, columns, feasible=feasible)
        outcome = maximize(A, b, c)
        system = HRep(dim=columns, rows=tuple((tuple(a), Fraction(r)) for a, r in zip(A, b)))
        ok = verify_certificate(outcome, c, "max", system)
        result.record(ok, f"case {k}, {rows}x{columns}, {outcome.status}")
    return result


def run_selftest(seed: int, cases: int = SELFTEST_CASES) -> SelftestReport:
    """
    Run every exact suite.

    Parameters:
        seed: master seed
        cases: randomized cases per suite

    Returns:
        SelftestReport, holds when no suite has a failure
    """
    logger.info(f"Running selftest with {cases} cases per suite, seed {seed}")
    children = np.random.SeedSequence(seed).spawn(6)
    suites: list[tuple[str, Callable[[], list[SuiteResult] | SuiteResult]]] = [
        ("polar identities", lambda: polar_identity_suite(np.random.default_rng(children[0]), cases)),
        ("bipolar", lambda: bipolar_suite(np.random.default_rng(children[1]), cases)),
        ("general duality", lambda: general_duality_suite(np.random.default_rng(children[2]), cases)),
        ("ordered plane", grosberg_krein_suite),
        ("direct sums", lambda: direct_sum_suite(np.random.default_rng(children[3]), cases)),
        ("ando", lambda: ando_suite(np.random.default_rng(children[4]), cases)),
        ("lp", lambda: lp_suite(np.random.default_rng(children[5]), cases)),
    ]
    report = SelftestReport(seed=seed, cases=cases)
    for name, suite in tqdm(suites, desc="Selftest suites", disable=not PROGRESS_ENABLED):
        outcome = suite()
        report.suites += outcome if isinstance(outcome, list) else [outcome]
        logger.debug(f"Suite {name} done")

    failed = [s.name for s in report.suites if not s.holds]
    if failed:
        logger.error(f"Selftest failed suites: {failed}")
    else:
        logger.info("Selftest passed")
    return report
