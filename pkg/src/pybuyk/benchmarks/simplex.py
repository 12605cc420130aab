r"""
Exact simplex method over the rationals.

Solves

.. math::

    \begin{array}{ll}
    \text{maximize} & c^T x \\
    \text{subject to} & A x \le b, \quad x \ge 0
    \end{array}

with a dense tableau of :class:`~fractions.Fraction` and Bland's rule for both
the entering and the leaving variable, which guarantees termination. When
some :math:`b_i < 0` the slack basis is infeasible and a first phase
minimizes the sum of artificial variables.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from pybuyk.utils.errors import DimensionMismatchError
from pybuyk.utils.numeric import RationalLike, as_rational, as_vector
from pybuyk.utils.status import SolverStatus

__all__ = ["LinearProgram", "LPSolution", "solve_lp"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearProgram:
    """A linear program in inequality form with non-negative variables.

    :param objective: coefficients :math:`c` to maximize
    :param A_ub: constraint matrix, one row per inequality
    :param b_ub: right hand sides
    """

    objective: Tuple[Fraction, ...]
    A_ub: Tuple[Tuple[Fraction, ...], ...]
    b_ub: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "objective", as_vector(self.objective))
        object.__setattr__(self, "A_ub", tuple(as_vector(r) for r in self.A_ub))
        object.__setattr__(self, "b_ub", as_vector(self.b_ub))
        if len(self.A_ub) != len(self.b_ub):
            raise DimensionMismatchError(
                f"{len(self.A_ub)} constraint rows but {len(self.b_ub)} right hand sides"
            )
        for i, row in enumerate(self.A_ub):
            if len(row) != self.n_variables:
                raise DimensionMismatchError(
                    f"Constraint {i} has {len(row)} coefficients, "
                    f"expected {self.n_variables}"
                )

    @property
    def n_variables(self) -> int:
        return len(self.objective)

    @property
    def n_constraints(self) -> int:
        return len(self.b_ub)

    def is_feasible(self, x: Sequence[RationalLike]) -> bool:
        """Checks a point against all constraints exactly."""
        x = as_vector(x)
        if len(x) != self.n_variables or any(xi < 0 for xi in x):
            return False
        return all(
            sum((a * xi for a, xi in zip(row, x)), Fraction(0)) <= b
            for row, b in zip(self.A_ub, self.b_ub)
        )

    def value(self, x: Sequence[RationalLike]) -> Fraction:
        return sum(
            (c * as_rational(xi) for c, xi in zip(self.objective, x)), Fraction(0)
        )


@dataclass(frozen=True)
class LPSolution:
    """Result of :func:`solve_lp`. ``value`` and ``x`` are ``None`` unless the
    status is optimal."""

    status: SolverStatus
    value: Optional[Fraction] = None
    x: Optional[Tuple[Fraction, ...]] = None
    n_pivots: int = 0


class _Tableau:
    """Rows hold the constraint coefficients followed by the right hand side.
    ``obj`` holds the reduced costs and, in its last position, minus the
    current objective value."""

    def __init__(self, rows: List[List[Fraction]], basis: List[int]):
        self.rows = rows
        self.basis = basis
        self.obj: List[Fraction] = []
        self.n_pivots = 0

    def set_objective(self, costs: Sequence[Fraction]):
        obj = list(costs) + [Fraction(0)]
        for row, b in zip(self.rows, self.basis):
            f = obj[b]
            if f != 0:
                obj = [a - f * r for a, r in zip(obj, row)]
        self.obj = obj

    def pivot(self, r: int, j: int):
        pivot_row = self.rows[r]
        piv = pivot_row[j]
        pivot_row = [a / piv for a in pivot_row]
        self.rows[r] = pivot_row
        for i, row in enumerate(self.rows):
            f = row[j]
            if i != r and f != 0:
                self.rows[i] = [a - f * p for a, p in zip(row, pivot_row)]
        f = self.obj[j]
        if f != 0:
            self.obj = [a - f * p for a, p in zip(self.obj, pivot_row)]
        self.basis[r] = j
        self.n_pivots += 1

    def run(self, columns: Sequence[int]) -> SolverStatus:
        """Bland's rule on the given columns until optimality or unboundedness."""
        while True:
            entering = next((j for j in columns if self.obj[j] > 0), None)
            if entering is None:
                return SolverStatus.Optimal
            best: Optional[Tuple[Fraction, int, int]] = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    candidate = (row[-1] / row[entering], self.basis[i], i)
                    if best is None or candidate < best:
                        best = candidate
            if best is None:
                return SolverStatus.Unbounded
            logger.debug(f"Pivot: column {entering} enters, row {best[2]} leaves")
            self.pivot(best[2], entering)

    @property
    def value(self) -> Fraction:
        return -self.obj[-1]


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solves a linear program exactly.

    :param lp: the program
    :return: the solution with its :class:`~pybuyk.utils.status.SolverStatus`
    """
    n, m = lp.n_variables, lp.n_constraints
    negative = [i for i, b in enumerate(lp.b_ub) if b < 0]
    n_art = len(negative)
    width = n + m + n_art

    rows: List[List[Fraction]] = []
    basis: List[int] = []
    for i, (a, b) in enumerate(zip(lp.A_ub, lp.b_ub)):
        row = list(a) + [Fraction(0)] * (m + n_art) + [b]
        row[n + i] = Fraction(1)
        if b < 0:
            row = [-x for x in row]
            art = n + m + negative.index(i)
            row[art] = Fraction(1)
            basis.append(art)
        else:
            basis.append(n + i)
        rows.append(row)

    tableau = _Tableau(rows, basis)
    status = SolverStatus.Optimal

    if n_art > 0:
        logger.debug(f"Phase one with {n_art} artificial variables")
        tableau.set_objective([Fraction(0)] * (n + m) + [Fraction(-1)] * n_art)
        status = tableau.run(range(width))
        if tableau.value < 0:
            logger.debug("Phase one optimum is negative: problem infeasible")
            return LPSolution(SolverStatus.Infeasible, n_pivots=tableau.n_pivots)
        # Drive artificial variables out of the basis, dropping redundant rows.
        for r in reversed(range(len(tableau.rows))):
            if tableau.basis[r] < n + m:
                continue
            j = next(
                (j for j in range(n + m) if tableau.rows[r][j] != 0), None
            )
            if j is None:
                del tableau.rows[r]
                del tableau.basis[r]
            else:
                tableau.pivot(r, j)

    tableau.set_objective(list(lp.objective) + [Fraction(0)] * (m + n_art))
    status = status & tableau.run(range(n + m))
    if not status:
        return LPSolution(status, n_pivots=tableau.n_pivots)

    x = [Fraction(0)] * n
    for row, b in zip(tableau.rows, tableau.basis):
        if b < n:
            x[b] = row[-1]
    logger.debug(
        f"LP with {n} variables and {m} constraints solved in "
        f"{tableau.n_pivots} pivots"
    )
    return LPSolution(SolverStatus.Optimal, tableau.value, tuple(x), tableau.n_pivots)
