"""
Exact two-phase simplex over the rationals.

Solves max c . x subject to A x <= b with x free. The tableau uses x = u - v, a slack per
row and an artificial per row (rows with negative right-hand side are negated first), so
the artificial columns of the final tableau hold the basis inverse and give exact dual
values. Pivoting follows Bland's rule, which terminates in exact arithmetic.
"""

from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction
from typing import Optional, Sequence

from loguru import logger

from cone_duality.errors import DimensionMismatchError
from cone_duality.polyrat.polyhedron import HRep
from cone_duality.polyrat.rational import RatVector, dot, neg


class LPStatus(StrEnum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class Sense(StrEnum):
    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class LPOutcome:
    """
    Result of lp_solve.

    certificate:
        optimal    -> multipliers y >= 0 with A^T y = s*c and b . y = s*value (s = +1 for max,
                      -1 for min)
        infeasible -> Farkas multipliers y >= 0 with A^T y = 0 and b . y < 0
        unbounded  -> ray r with A r <= 0 improving the objective
    """

    status: LPStatus
    value: Optional[Fraction]
    point: Optional[RatVector]
    certificate: RatVector


class _Tableau:
    def __init__(self, A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], n: int):
        self.m = len(A)
        self.n = n
        self.signs = [Fraction(-1) if bi < 0 else Fraction(1) for bi in b]
        # columns: u (n) | v (n) | slack (m) | artificial (m) | rhs
        self.width = 2 * n + 2 * self.m
        self.rows: list[list[Fraction]] = []
        for i, (row, bi) in enumerate(zip(A, b)):
            s = self.signs[i]
            line = [s * a for a in row] + [-s * a for a in row] + [Fraction(0)] * (2 * self.m)
            line[2 * n + i] = s
            line[2 * n + self.m + i] = Fraction(1)
            line.append(s * bi)
            self.rows.append(line)
        self.basis = [2 * n + self.m + i for i in range(self.m)]

    def is_artificial(self, column: int) -> bool:
        return column >= 2 * self.n + self.m

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        reduced = list(cost)
        for k, column in enumerate(self.basis):
            c = cost[column]
            if c != 0:
                row = self.rows[k]
                for j in range(self.width):
                    if row[j] != 0:
                        reduced[j] -= c * row[j]
        return reduced

    def pivot(self, r: int, column: int) -> None:
        pivot_row = self.rows[r]
        value = pivot_row[column]
        pivot_row = [a / value for a in pivot_row]
        self.rows[r] = pivot_row
        for k, row in enumerate(self.rows):
            if k != r and row[column] != 0:
                factor = row[column]
                self.rows[k] = [a - factor * p for a, p in zip(row, pivot_row)]
        self.basis[r] = column

    def objective_value(self, cost: Sequence[Fraction]) -> Fraction:
        return sum(
            (cost[column] * self.rows[k][-1] for k, column in enumerate(self.basis)), Fraction(0)
        )

    def run(self, cost: Sequence[Fraction], allow_artificial: bool) -> Optional[int]:
        """Bland's rule iterations. Returns the entering column of an unbounded ray, else None."""
        iterations = 0
        while True:
            reduced = self.reduced_costs(cost)
            entering = next(
                (
                    j
                    for j in range(self.width)
                    if reduced[j] > 0 and (allow_artificial or not self.is_artificial(j))
                ),
                None,
            )
            if entering is None:
                logger.debug(f"Simplex phase finished after {iterations} pivots")
                return None
            leaving = None
            best = None
            for k, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[k] < self.basis[leaving])
                    ):
                        best, leaving = ratio, k
            if leaving is None:
                return entering
            self.pivot(leaving, entering)
            iterations += 1

    def duals(self, cost: Sequence[Fraction]) -> RatVector:
        """Multipliers for the original rows A x <= b (sign-corrected)."""
        first_artificial = 2 * self.n + self.m
        y = []
        for i in range(self.m):
            column = first_artificial + i
            yi = sum(
                (cost[basic] * self.rows[k][column] for k, basic in enumerate(self.basis)),
                Fraction(0),
            )
            y.append(self.signs[i] * yi)
        return tuple(y)

    def primal_point(self) -> RatVector:
        values = [Fraction(0)] * self.width
        for k, column in enumerate(self.basis):
            values[column] = self.rows[k][-1]
        return tuple(values[j] - values[self.n + j] for j in range(self.n))

    def ray(self, entering: int) -> RatVector:
        direction = [Fraction(0)] * self.width
        direction[entering] = Fraction(1)
        for k, column in enumerate(self.basis):
            direction[column] = -self.rows[k][entering]
        return tuple(direction[j] - direction[self.n + j] for j in range(self.n))


def maximize(
    A: Sequence[Sequence[Fraction]], b: Sequence[Fraction], c: Sequence[Fraction]
) -> LPOutcome:
    """
    Solve max c . x subject to A x <= b, x free, exactly.

    Parameters:
        A: constraint rows, each of length len(c)
        b: right-hand sides
        c: objective

    Returns:
        LPOutcome with a certificate for its status
    """
    n = len(c)
    c = [Fraction(a) for a in c]
    A = [[Fraction(a) for a in row] for row in A]
    b = [Fraction(a) for a in b]
    for row in A:
        if len(row) != n:
            raise DimensionMismatchError(f"Constraint row of length {len(row)}, expected {n}")
    if len(A) != len(b):
        raise DimensionMismatchError(f"{len(A)} rows but {len(b)} right-hand sides")

    tableau = _Tableau(A, b, n)
    m = tableau.m

    phase_one = [Fraction(0)] * (2 * n + m) + [Fraction(-1)] * m
    tableau.run(phase_one, allow_artificial=True)
    if tableau.objective_value(phase_one) < 0:
        farkas = tableau.duals(phase_one)
        logger.debug(f"LP infeasible ({m} rows, {n} variables)")
        return LPOutcome(status=LPStatus.INFEASIBLE, value=None, point=None, certificate=farkas)

    # drive zero-valued artificials out of the basis where possible
    for k in range(m):
        if tableau.is_artificial(tableau.basis[k]):
            column = next(
                (
                    j
                    for j in range(2 * n + m)
                    if tableau.rows[k][j] != 0
                ),
                None,
            )
            if column is not None:
                tableau.pivot(k, column)

    phase_two = c + [-a for a in c] + [Fraction(0)] * (2 * m)
    entering = tableau.run(phase_two, allow_artificial=False)
    if entering is not None:
        ray = tableau.ray(entering)
        logger.debug(f"LP unbounded along {ray}")
        return LPOutcome(status=LPStatus.UNBOUNDED, value=None, point=None, certificate=ray)

    return LPOutcome(
        status=LPStatus.OPTIMAL,
        value=tableau.objective_value(phase_two),
        point=tableau.primal_point(),
        certificate=tableau.duals(phase_two),
    )


def lp_solve(objective: Sequence[Fraction], sense: Sense | str, feasible: HRep) -> LPOutcome:
    """
    Optimise a linear objective over a polyhedron given by its H-representation.

    Minimisation is solved as maximisation of the negated objective; the reported value is
    the true minimum, the certificate refers to the negated (maximisation) problem.
    """
    sense = Sense(sense)
    if len(objective) != feasible.dim:
        raise DimensionMismatchError(
            f"Objective of length {len(objective)} over a polyhedron of dim {feasible.dim}"
        )
    objective = tuple(Fraction(a) for a in objective)
    A = [a for a, _ in feasible.rows]
    b = [rhs for _, rhs in feasible.rows]
    c = objective if sense is Sense.MAX else neg(objective)
    outcome = maximize(A, b, c)
    if sense is Sense.MIN and outcome.status is LPStatus.OPTIMAL:
        return LPOutcome(
            status=outcome.status,
            value=-outcome.value,
            point=outcome.point,
            certificate=outcome.certificate,
        )
    return outcome


def verify_certificate(
    outcome: LPOutcome, objective: Sequence[Fraction], sense: Sense | str, feasible: HRep
) -> bool:
    """Independently check that an LPOutcome's certificate proves its status."""
    sense = Sense(sense)
    c = tuple(Fraction(a) for a in objective)
    if sense is Sense.MIN:
        c = neg(c)
    rows = feasible.rows
    n = feasible.dim

    def transpose_product(y):
        return tuple(
            sum((yi * a[j] for yi, (a, _) in zip(y, rows)), Fraction(0)) for j in range(n)
        )

    if outcome.status is LPStatus.OPTIMAL:
        y = outcome.certificate
        value = outcome.value if sense is Sense.MAX else -outcome.value
        return (
            len(y) == len(rows)
            and all(yi >= 0 for yi in y)
            and transpose_product(y) == c
            and dot(y, [rhs for _, rhs in rows]) == value
            and feasible.satisfied_by(outcome.point)
            and dot(c, outcome.point) == value
        )
    if outcome.status is LPStatus.INFEASIBLE:
        y = outcome.certificate
        return (
            len(y) == len(rows)
            and all(yi >= 0 for yi in y)
            and all(v == 0 for v in transpose_product(y))
            and dot(y, [rhs for _, rhs in rows]) < 0
        )
    r = outcome.certificate
    return feasible.recedes_along(r) and dot(c, r) > 0
