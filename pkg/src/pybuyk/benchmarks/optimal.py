r"""
Revenue-optimal buy-one mechanism for a finite distribution.

With support :math:`v_1, \dots, v_m` and probabilities :math:`f_i` the
mechanism assigns each type a lottery :math:`q_i \in [0,1]^n` at price
:math:`p_i \ge 0` and solves

.. math::

    \begin{array}{lll}
    \text{maximize} & \sum_i f_i p_i & \\
    \text{subject to} & v_i \cdot q_i - p_i \ge v_i \cdot q_j - p_j
        & \forall i \ne j \\
    & v_i \cdot q_i - p_i \ge 0 & \forall i \\
    & q_{i,d} \le 1 & \forall i, d
    \end{array}

All right hand sides are zero or one, so the slack basis is feasible and the
exact simplex method needs no first phase.
"""
import logging
import warnings
from fractions import Fraction
from typing import List

from pybuyk.benchmarks.posted import BenchmarkResult
from pybuyk.benchmarks.simplex import LinearProgram, solve_lp
from pybuyk.core.types import DiscreteDistribution, Menu, MenuEntry
from pybuyk.utils.config import EnumerationConfig
from pybuyk.utils.errors import BudgetExceededError, PostconditionError

__all__ = ["buy_one_program", "optimal_buy_one"]

logger = logging.getLogger(__name__)


def buy_one_program(dist: DiscreteDistribution) -> LinearProgram:
    """Builds the buy-one revenue maximization program.

    Variables are laid out per type: the ``n`` allocation probabilities
    followed by the price, i.e. type ``i`` owns columns
    ``i*(n+1) .. i*(n+1)+n``.

    :param dist: the distribution
    """
    n, m = dist.n, len(dist)
    width = m * (n + 1)
    zero = Fraction(0)

    def q(i: int, d: int) -> int:
        return i * (n + 1) + d

    def p(i: int) -> int:
        return i * (n + 1) + n

    objective = [zero] * width
    for i, f in enumerate(dist.probabilities):
        objective[p(i)] = f

    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    types = dist.types
    for i, v in enumerate(types):
        # IC: v.q_j - p_j - v.q_i + p_i <= 0
        for j in range(m):
            if j == i:
                continue
            row = [zero] * width
            for d in range(n):
                row[q(j, d)] += v[d]
                row[q(i, d)] -= v[d]
            row[p(j)] -= 1
            row[p(i)] += 1
            rows.append(row)
            rhs.append(zero)
        # IR: p_i - v.q_i <= 0
        row = [zero] * width
        for d in range(n):
            row[q(i, d)] = -v[d]
        row[p(i)] = Fraction(1)
        rows.append(row)
        rhs.append(zero)
        for d in range(n):
            row = [zero] * width
            row[q(i, d)] = Fraction(1)
            rows.append(row)
            rhs.append(Fraction(1))

    return LinearProgram(tuple(objective), tuple(map(tuple, rows)), tuple(rhs))


def optimal_buy_one(
    dist: DiscreteDistribution, *, config: EnumerationConfig = EnumerationConfig()
) -> BenchmarkResult:
    """Optimal revenue of a buy-one IC mechanism, by exact linear programming.

    .. note::
       The program has ``m(n+1)`` variables and ``m(m-1) + m(n+1)``
       constraints for ``m`` support types. A warning is issued above a few
       hundred variables, and ``config.max_lp_variables`` is a hard cap.

    :param dist: the distribution
    :param config: ``max_lp_variables`` bounds the size of the program
    :return: the optimal revenue and the menu of all per-type lotteries which
        are not the null entry
    :raises BudgetExceededError: if the program is too large
    """
    n_variables = len(dist) * (dist.n + 1)
    if n_variables > config.max_lp_variables:
        raise BudgetExceededError(
            f"Buy-one program has {n_variables} variables, "
            f"cap is {config.max_lp_variables}"
        )
    if n_variables > 300:
        warnings.warn(
            f"Large buy-one program with {n_variables} variables. The exact "
            f"simplex method may take a long time.",
            RuntimeWarning,
        )
    if len(dist) == 0:
        return BenchmarkResult(Fraction(0), Menu(dist.n, ()))

    lp = buy_one_program(dist)
    solution = solve_lp(lp)
    if not solution.status:
        # The zero mechanism is feasible and prices are bounded by values
        raise PostconditionError(
            f"Buy-one program ended with status {solution.status.value}", solution
        )
    assert solution.x is not None and solution.value is not None
    if not lp.is_feasible(solution.x):
        raise PostconditionError("Buy-one solution violates its constraints", solution)

    n = dist.n
    entries = []
    for i in range(len(dist)):
        block = solution.x[i * (n + 1) : (i + 1) * (n + 1)]
        entry = MenuEntry(block[n], tuple(block[:n]))
        if entry.price != 0 or any(x != 0 for x in entry.allocation):
            entries.append(entry)
    logger.info(f"Optimal buy-one revenue {solution.value} in {solution.n_pivots} pivots")
    return BenchmarkResult(solution.value, Menu(n, tuple(entries)))
