"""
Cones in the matrix algebra M_n(C), checked by sampling.

M_n and its dual are real vector spaces paired by <a, ρ> = Re tr(ρ a); the functional
φ(a) = tr(ρ a) has norm equal to the trace norm of ρ and is positive iff ρ is positive
semidefinite. Everything here is floating point with explicit tolerances.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from loguru import logger
from tqdm import tqdm

from cone_duality.constants import DEFAULT_WORKERS, IDENTITY_TOL, INEQUALITY_TOL, PROGRESS_ENABLED
from cone_duality.errors import HypothesisError

BATCH_SIZE = 1000

LEMMA51_ITEMS = {
    1: "(A+)° = -A+' + iA_h'",
    2: "(iA+)° = iA+' + A_h'",
    3: "(A+')° = -A+ + iA_h",
    4: "(iA+')° = iA+ + A_h",
}

THM53_ITEMS = {
    1: "|a| <= max(|b1|, |b2|) + max(|b3|, |b4|), shifts in A+ + iA_h and iA+ + A_h",
    2: "|a| <= max(|b1|, |b2|) + max(|b3|, |b4|), shifts in ±A+ and ±iA+",
    3: "a <= b <= c implies |b| <= 2 max(|a|, |c|)",
    4: "a <= b <= c self-adjoint implies |b| <= max(|a|, |c|)",
    5: "|φ| <= |φ1| + |φ2| + |φ3| + |φ4|, shifts in A+' + iA_h' and iA+' + A_h'",
    6: "|φ| <= |φ1| + |φ2| + |φ3| + |φ4|, shifts in ±A+' and ±iA+'",
    7: "ρ <= φ <= ψ implies |φ| <= 2(|ρ| + |ψ|)",
    8: "ρ <= φ <= ψ self-adjoint implies |φ| <= |ρ| + |ψ|",
}


def op_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2))


def trace_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, "nuc"))


def adjoint(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def real_part(a: np.ndarray) -> np.ndarray:
    """(a + a*)/2"""
    return (a + adjoint(a)) / 2


def imaginary_part(a: np.ndarray) -> np.ndarray:
    """(a - a*)/(2i), so that a = real_part(a) + i imaginary_part(a)"""
    return (a - adjoint(a)) / 2j


def is_hermitian(a: np.ndarray, tol: float = IDENTITY_TOL) -> bool:
    scale = max(1.0, op_norm(a))
    return a.shape[0] == a.shape[1] and op_norm(a - adjoint(a)) <= tol * scale


def is_positive(a: np.ndarray, tol: float = IDENTITY_TOL) -> bool:
    if not is_hermitian(a, tol):
        return False
    return float(np.linalg.eigvalsh(real_part(a)).min()) >= -tol * max(1.0, op_norm(a))


def random_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    scale = 10 ** rng.uniform(-1, 1)
    return scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    return real_part(random_matrix(rng, n))


def random_psd(rng: np.random.Generator, n: int) -> np.ndarray:
    """q q* with some columns of q zeroed, so low-rank and zero samples occur."""
    q = random_matrix(rng, n)
    q[:, rng.random(n) < 0.3] = 0
    return q @ adjoint(q)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(random_matrix(rng, n))
    phases = np.diag(r) / np.abs(np.where(np.diag(r) == 0, 1, np.diag(r)))
    return q * phases


@dataclass(frozen=True, eq=False)
class HermFunctional:
    """φ(a) = tr(ρ a) for hermitian ρ."""

    rho: np.ndarray
    tol: float = IDENTITY_TOL

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise HypothesisError(f"Expected a square matrix, got shape {rho.shape}")
        if not is_hermitian(rho, self.tol):
            raise HypothesisError("The functional is not self-adjoint: rho is not hermitian")
        object.__setattr__(self, "rho", rho)

    @property
    def n(self) -> int:
        return self.rho.shape[0]

    @property
    def norm(self) -> float:
        return trace_norm(self.rho)

    def __call__(self, a: np.ndarray) -> complex:
        return complex(np.trace(self.rho @ a))


@dataclass(frozen=True, eq=False)
class JordanDecomposition:
    positive: HermFunctional
    negative: HermFunctional
    norm: float
    positive_norm: float
    negative_norm: float
    reconstruction_error: float
    support_overlap: float
    min_eigenvalue: float
    holds: bool


def jordan_decompose(phi: HermFunctional, tol: float = IDENTITY_TOL) -> JordanDecomposition:
    """
    Split a self-adjoint functional into positive parts with orthogonal supports.

    Parameters:
        phi: the functional, given by its hermitian density
        tol: tolerance for the reconstruction, support and norm checks

    Returns:
        JordanDecomposition with φ = φ+ - φ-, and holds set when ‖φ‖ = ‖φ+‖ + ‖φ-‖
        and the other checks pass within tol
    """
    rho = real_part(phi.rho)
    eigenvalues, vectors = np.linalg.eigh(rho)
    rho_plus = (vectors * np.maximum(eigenvalues, 0)) @ adjoint(vectors)
    rho_minus = (vectors * np.maximum(-eigenvalues, 0)) @ adjoint(vectors)

    scale = max(1.0, op_norm(rho))
    norm = trace_norm(rho)
    positive_norm, negative_norm = trace_norm(rho_plus), trace_norm(rho_minus)
    reconstruction_error = op_norm(rho - (rho_plus - rho_minus))
    support_overlap = op_norm(rho_plus @ rho_minus)
    min_eigenvalue = float(
        min(np.linalg.eigvalsh(rho_plus).min(), np.linalg.eigvalsh(rho_minus).min())
    )
    holds = (
        reconstruction_error <= tol * scale
        and support_overlap <= tol * scale**2
        and min_eigenvalue >= -tol * scale
        and abs(norm - positive_norm - negative_norm) <= tol * max(1.0, norm)
    )
    if not holds:
        logger.warning(
            f"Jordan decomposition check failed for n={phi.n}: "
            f"reconstruction {reconstruction_error:.3g}, overlap {support_overlap:.3g}"
        )
    return JordanDecomposition(
        positive=HermFunctional(rho_plus, tol=max(tol, IDENTITY_TOL)),
        negative=HermFunctional(rho_minus, tol=max(tol, IDENTITY_TOL)),
        norm=norm,
        positive_norm=positive_norm,
        negative_norm=negative_norm,
        reconstruction_error=reconstruction_error,
        support_overlap=support_overlap,
        min_eigenvalue=min_eigenvalue,
        holds=holds,
    )


@dataclass
class SampleReport:
    """
    Outcome of a sampled check.

    max_violation is max(0, lhs - rhs·(1 + tol)) over the samples and max_ratio the
    largest lhs/rhs seen; worst_case_inputs are the matrices of the sample with that ratio.
    """

    check: str
    item: int
    n: int
    samples: int
    max_violation: float
    max_ratio: float
    statement: str
    worst_case_inputs: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.max_violation == 0


@dataclass
class _Batch:
    max_violation: float = 0.0
    max_ratio: float = 0.0
    worst: dict[str, np.ndarray] = field(default_factory=dict)

    def record(self, lhs: float, rhs: float, tol: float, inputs: dict[str, np.ndarray]):
        violation = max(0.0, lhs - rhs * (1 + tol))
        if rhs > 0:
            ratio = lhs / rhs
        else:
            ratio = 0.0 if lhs <= tol else float("inf")
        self.max_violation = max(self.max_violation, violation)
        if ratio > self.max_ratio or not self.worst:
            self.max_ratio = max(ratio, self.max_ratio)
            self.worst = inputs

    def record_excess(self, excess: float, tol: float, inputs: dict[str, np.ndarray]):
        """For sign conditions: excess is a normalised quantity that should not exceed 0."""
        self.max_violation = max(self.max_violation, max(0.0, excess - tol))
        if excess > self.max_ratio or not self.worst:
            self.max_ratio = max(excess, self.max_ratio)
            self.worst = inputs


Sampler = Callable[[np.random.Generator, int, int, float], _Batch]


def _run_batches(
    sampler: Sampler, n: int, samples: int, seed: int, tol: float, workers: int, desc: str
) -> _Batch:
    """Fixed-size batches with seeds spawned from the master seed, merged in batch order."""
    sizes = [BATCH_SIZE] * (samples // BATCH_SIZE)
    if samples % BATCH_SIZE:
        sizes.append(samples % BATCH_SIZE)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(args):
        child, size = args
        return sampler(np.random.default_rng(child), n, size, tol)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        batches = list(
            tqdm(
                executor.map(run, zip(seeds, sizes)),
                total=len(sizes),
                desc=desc,
                disable=not PROGRESS_ENABLED,
            )
        )

    merged = _Batch()
    for batch in batches:
        merged.max_violation = max(merged.max_violation, batch.max_violation)
        if batch.max_ratio > merged.max_ratio or not merged.worst:
            merged.max_ratio = max(merged.max_ratio, batch.max_ratio)
            merged.worst = batch.worst
    return merged


def _polar_forward(item: int, rng: np.random.Generator, n: int):
    """A member of the claimed polar and a member of the cone, as (polar, cone) matrices."""
    p, q, h = random_psd(rng, n), random_psd(rng, n), random_hermitian(rng, n)
    if item in (1, 3):
        return -p + 1j * h, q
    return 1j * p + h, 1j * q


def _cone_element(item: int, psd: np.ndarray) -> np.ndarray:
    return psd if item in (1, 3) else 1j * psd


def random_signed_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    """u diag(s) u* with eigenvalues of independent random sign, so every inertia occurs."""
    u = random_unitary(rng, n)
    s = rng.choice([-1.0, 1.0], size=n) * rng.uniform(0.1, 2.0, size=n) * 10 ** rng.uniform(-1, 1)
    return (u * s) @ adjoint(u)


def _polar_candidate(item: int, rng: np.random.Generator, n: int) -> np.ndarray:
    if item in (1, 3):
        return random_signed_hermitian(rng, n) + 1j * random_hermitian(rng, n)
    return random_hermitian(rng, n) + 1j * random_signed_hermitian(rng, n)


def cone_probes(rng: np.random.Generator, n: int, count: int = 16) -> list[np.ndarray]:
    """Positive semidefinite probes, half of them rank-one v v*."""
    probes = []
    for k in range(count):
        if k % 2:
            probes.append(random_psd(rng, n))
        else:
            v = rng.normal(size=n) + 1j * rng.normal(size=n)
            probes.append(np.outer(v, v.conj()))
    return probes


@dataclass(frozen=True)
class PolarMembership:
    """
    claimed: x splits as re + i·im with the signs of the right-hand set
    sampled: Re tr(x c) <= 0 on every probed cone element c
    excess: normalised disagreement between the two, > 0 when they disagree
    """

    claimed: bool
    sampled: bool
    excess: float


def polar_membership(
    item: int, x: np.ndarray, probes: list[np.ndarray], tol: float = INEQUALITY_TOL
) -> PolarMembership:
    """
    Compare membership of x in the claimed right-hand set with membership in the polar.

    When the split leaves the claimed set, the eigenvector of the offending part gives one
    more rank-one probe, which must then separate x from the cone.
    """
    if item in (1, 3):
        values, vectors = np.linalg.eigh(real_part(x))
        k = int(np.argmax(values))
        wrong_side = float(values[k])
    else:
        values, vectors = np.linalg.eigh(imaginary_part(x))
        k = int(np.argmin(values))
        wrong_side = -float(values[k])
    size = max(op_norm(x), np.finfo(float).tiny)
    claimed = wrong_side <= tol * size

    elements = [_cone_element(item, c) for c in probes]
    separator = None
    if not claimed:
        v = vectors[:, k]
        separator = _cone_element(item, np.outer(v, v.conj()))
        elements.append(separator)

    def pairing(c: np.ndarray) -> float:
        scale = trace_norm(x) * op_norm(c)
        return float(np.trace(x @ c).real) / scale if scale > 0 else 0.0

    worst = max(pairing(c) for c in elements)
    sampled = worst <= tol
    excess = worst if claimed else -pairing(separator)
    return PolarMembership(claimed=claimed, sampled=sampled, excess=excess)


def _lemma51_sampler(item: int) -> Sampler:
    def sample(rng: np.random.Generator, n: int, size: int, tol: float) -> _Batch:
        batch = _Batch()
        for _ in range(size):
            # forward: Re <cone element, polar element> <= 0
            polar, cone = _polar_forward(item, rng, n)
            pairing = float(np.trace(polar @ cone).real)
            scale = trace_norm(polar) * op_norm(cone)
            excess = pairing / scale if scale > 0 else 0.0
            batch.record_excess(excess, tol, {"polar": polar, "cone": cone})

            # converse: polar membership decided by probing the cone agrees with the split
            x = _polar_candidate(item, rng, n)
            membership = polar_membership(item, x, cone_probes(rng, n), tol)
            batch.record_excess(membership.excess, tol, {"candidate": x})
        return batch

    return sample


def check_lemma51(
    item: int,
    samples: int,
    seed: int,
    tol: float = INEQUALITY_TOL,
    n: int = 2,
    workers: int = DEFAULT_WORKERS,
) -> SampleReport:
    """
    Sample both inclusions of a polar formula for the cones A+, iA+, A+' and iA+'.

    Items 1 and 2 describe polars in the dual (functionals ρ), items 3 and 4 polars in the
    algebra; the trace pairing is symmetric so the samplers coincide pairwise.
    """
    if item not in LEMMA51_ITEMS:
        raise ValueError(f"Lemma item must be one of {sorted(LEMMA51_ITEMS)}, got {item}")
    logger.info(f"Checking {LEMMA51_ITEMS[item]} with {samples} samples, n={n}, seed={seed}")
    batch = _run_batches(
        _lemma51_sampler(item), n, samples, seed, tol, workers, desc=f"Polar formula {item}"
    )
    return SampleReport(
        check="lemma51",
        item=item,
        n=n,
        samples=samples,
        max_violation=batch.max_violation,
        max_ratio=batch.max_ratio,
        statement=LEMMA51_ITEMS[item],
        worst_case_inputs=batch.worst,
    )


def _four_cone_sample(item: int, rng: np.random.Generator, n: int, tol: float, batch: _Batch):
    with_hermitian = item in (1, 5)
    norm = op_norm if item in (1, 2) else trace_norm
    a = random_matrix(rng, n)
    p = [random_psd(rng, n) for _ in range(4)]
    if with_hermitian:
        h = [random_hermitian(rng, n) for _ in range(4)]
    else:
        h = [np.zeros((n, n), dtype=complex)] * 4
    b = [
        a - p[0] - 1j * h[0],
        a + p[1] - 1j * h[1],
        a - 1j * p[2] - h[2],
        a + 1j * p[3] - h[3],
    ]
    lhs = norm(a)
    if item in (1, 2):
        rhs = max(norm(b[0]), norm(b[1])) + max(norm(b[2]), norm(b[3]))
    else:
        rhs = sum(norm(bj) for bj in b)
    batch.record(lhs, rhs, tol, {"a": a, "b1": b[0], "b2": b[1], "b3": b[2], "b4": b[3]})


def _interval_sample(item: int, rng: np.random.Generator, n: int, tol: float, batch: _Batch):
    hermitian = item in (4, 8)
    lower = random_hermitian(rng, n) if hermitian else random_matrix(rng, n)
    middle = lower + random_psd(rng, n)
    upper = middle + random_psd(rng, n)
    lhs, rhs = _interval_sides(item, lower, middle, upper)
    batch.record(lhs, rhs, tol, {"lower": lower, "middle": middle, "upper": upper})


def _interval_sides(item: int, lower, middle, upper) -> tuple[float, float]:
    if item == 3:
        return op_norm(middle), 2 * max(op_norm(lower), op_norm(upper))
    if item == 4:
        return op_norm(middle), max(op_norm(lower), op_norm(upper))
    if item == 7:
        return trace_norm(middle), 2 * (trace_norm(lower) + trace_norm(upper))
    return trace_norm(middle), trace_norm(lower) + trace_norm(upper)


def _thm53_sampler(item: int) -> Sampler:
    def sample(rng: np.random.Generator, n: int, size: int, tol: float) -> _Batch:
        batch = _Batch()
        for _ in range(size):
            if item in (1, 2, 5, 6):
                _four_cone_sample(item, rng, n, tol, batch)
            else:
                _interval_sample(item, rng, n, tol, batch)
        return batch

    return sample


def check_thm53(
    item: int,
    samples: int,
    seed: int,
    tol: float = INEQUALITY_TOL,
    n: int = 2,
    workers: int = DEFAULT_WORKERS,
) -> SampleReport:
    """
    Sample one of the eight order-norm inequalities in M_n.

    Parameters:
        item: 1..8; items 1-4 use the operator norm, items 5-8 the trace norm
        samples: number of sampled configurations
        seed: master seed, batches get deterministic child seeds
        tol: relative tolerance on the right-hand side
        n: matrix size
        workers: threads for the sample batches

    Returns:
        SampleReport, max_violation 0 when every sample satisfies the inequality
    """
    if item not in THM53_ITEMS:
        raise ValueError(f"Theorem item must be one of {sorted(THM53_ITEMS)}, got {item}")
    logger.info(f"Checking '{THM53_ITEMS[item]}' with {samples} samples, n={n}, seed={seed}")
    batch = _run_batches(
        _thm53_sampler(item), n, samples, seed, tol, workers, desc=f"Order inequality {item}"
    )
    report = SampleReport(
        check="thm53",
        item=item,
        n=n,
        samples=samples,
        max_violation=batch.max_violation,
        max_ratio=batch.max_ratio,
        statement=THM53_ITEMS[item],
        worst_case_inputs=batch.worst,
    )
    if not report.holds:
        logger.warning(f"Order inequality {item} violated by {report.max_violation:.3g}")
    return report


@dataclass(frozen=True)
class InequalityCheck:
    item: int
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1 + INEQUALITY_TOL)


def order_interval_bound(item: int, lower, middle, upper, tol: float = IDENTITY_TOL) -> InequalityCheck:
    """
    Evaluate an order-interval inequality (items 3, 4, 7, 8) on explicit matrices.

    Raises:
        HypothesisError: if lower <= middle <= upper fails, or the self-adjoint items get
            non-hermitian input
    """
    if item not in (3, 4, 7, 8):
        raise ValueError(f"Order-interval items are 3, 4, 7 and 8, got {item}")
    lower, middle, upper = (np.asarray(x, dtype=complex) for x in (lower, middle, upper))
    if item in (4, 8) and not all(is_hermitian(x, tol) for x in (lower, middle, upper)):
        raise HypothesisError("Items 4 and 8 need self-adjoint elements")
    if not (is_positive(middle - lower, tol) and is_positive(upper - middle, tol)):
        raise HypothesisError("Expected lower <= middle <= upper")
    lhs, rhs = _interval_sides(item, lower, middle, upper)
    return InequalityCheck(item=item, lhs=lhs, rhs=rhs)


@dataclass(frozen=True)
class JordanSuiteReport:
    samples: int
    n: int
    max_reconstruction_error: float
    max_norm_defect: float
    max_support_overlap: float
    failures: int

    @property
    def holds(self) -> bool:
        return self.failures == 0


def check_thm52(
    samples: int, n: int, seed: int, tol: float = IDENTITY_TOL
) -> JordanSuiteReport:
    """Jordan-decompose random hermitian functionals of size 1..n."""
    rng = np.random.default_rng(seed)
    worst_reconstruction = worst_defect = worst_overlap = 0.0
    failures = 0
    for _ in tqdm(range(samples), desc="Jordan decompositions", disable=not PROGRESS_ENABLED):
        size = int(rng.integers(1, n + 1))
        phi = HermFunctional(random_hermitian(rng, size))
        decomposition = jordan_decompose(phi, tol)
        defect = abs(decomposition.norm - decomposition.positive_norm - decomposition.negative_norm)
        worst_reconstruction = max(worst_reconstruction, decomposition.reconstruction_error)
        worst_defect = max(worst_defect, defect / max(1.0, decomposition.norm))
        worst_overlap = max(worst_overlap, decomposition.support_overlap)
        failures += not decomposition.holds
    logger.info(f"Jordan decompositions: {failures} failures over {samples} samples")
    return JordanSuiteReport(
        samples=samples,
        n=n,
        max_reconstruction_error=worst_reconstruction,
        max_norm_defect=worst_defect,
        max_support_overlap=worst_overlap,
        failures=failures,
    )


@dataclass(frozen=True)
class TraceNormBound:
    lower_bound: float
    exact: float
    best_unitary: Optional[np.ndarray] = None

    @property
    def relative_gap(self) -> float:
        return (self.exact - self.lower_bound) / self.exact if self.exact else 0.0


def trace_norm_lower_bound(
    rho, samples: int, seed: int, refine_steps: int = 2000
) -> TraceNormBound:
    """
    Lower bound on ‖φ‖ = sup |φ(u)| over unitaries u, which is the trace norm of rho.

    Random unitaries give a starting point which a local search then improves by
    re-orthonormalised perturbations with a shrinking step.
    """
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0]
    rng = np.random.default_rng(seed)

    def value(u):
        return float(np.trace(rho @ u).real)

    best_u, best = np.eye(n, dtype=complex), value(np.eye(n, dtype=complex))
    for _ in range(samples):
        u = random_unitary(rng, n)
        v = value(u)
        if v > best:
            best_u, best = u, v

    step = 0.5
    for _ in range(refine_steps):
        candidate, r = np.linalg.qr(best_u + step * random_matrix(rng, n) / 10)
        candidate = candidate * (np.diag(r) / np.abs(np.where(np.diag(r) == 0, 1, np.diag(r))))
        v = value(candidate)
        if v > best:
            best_u, best = candidate, v
        else:
            step = max(step * 0.995, 1e-4)

    exact = trace_norm(rho)
    logger.debug(f"Trace norm {exact:.6g}, sampled lower bound {best:.6g}")
    return TraceNormBound(lower_bound=best, exact=exact, best_unitary=best_u)
