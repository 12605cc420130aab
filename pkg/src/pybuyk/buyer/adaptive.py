r"""
Adaptive buy-k buyers.

An adaptive buyer purchases entries one at a time and observes which items
each lottery delivered before deciding on the next purchase. Its optimal
strategy is found by dynamic programming over states ``(S, t)``, where ``S``
is the set of items already won and ``t`` the number of purchases left:

.. math::

    V(S, t) = \max\Big(0, \max_e \Big(-p_e + \sum_{W \subseteq [n] \setminus S}
              \Pr[W \mid e, S]\,\big(v(W) + V(S \cup W, t - 1)\big)\Big)\Big)

Draws for items in ``S`` are irrelevant, so outcomes only range over the items
not yet won. There are :math:`2^n` states, hence the cap on ``n``.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Tuple

from pybuyk.buyer.best_response import TypesLike, as_types, best_responses
from pybuyk.buyer.ic import ICVerdict, ICWitness
from pybuyk.core.types import Menu
from pybuyk.utils.config import EnumerationConfig
from pybuyk.utils.errors import BudgetExceededError, DimensionMismatchError
from pybuyk.utils.numeric import RationalLike, as_vector

__all__ = ["adaptive_value", "verify_adaptive_buyk_ic"]

logger = logging.getLogger(__name__)


def adaptive_value(
    v: Iterable[RationalLike],
    menu: Menu,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> Fraction:
    """Expected utility of the optimal adaptive strategy with at most ``k``
    purchases.

    :param v: valuation
    :param menu: the menu on offer
    :param k: maximal number of purchases
    :param config: ``max_adaptive_items`` caps the number of items
    :return: the exact value :math:`V(\\emptyset, k)`
    :raises BudgetExceededError: if the menu has more items than the cap
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    v = as_vector(v)
    n = menu.n
    if len(v) != n:
        raise DimensionMismatchError(
            f"Valuation of length {len(v)} for a menu over {n} items"
        )
    if n > config.max_adaptive_items:
        raise BudgetExceededError(
            f"state space too large: 2^{n} won-item sets exceed the cap of "
            f"{config.max_adaptive_items} items"
        )

    bundle_value = sum(v, Fraction(0))
    # Per entry: price, mask of items won for sure, randomized items.
    lotteries: List[Tuple[Fraction, int, Tuple[Tuple[int, Fraction], ...]]] = []
    for entry in menu.entries:
        if len(entry.allocation) != n:
            raise DimensionMismatchError(
                f"Menu entry of dimension {len(entry.allocation)} != {n}"
            )
        if entry.price > bundle_value:
            continue
        sure = sum(1 << j for j, q in enumerate(entry.allocation) if q == 1)
        randomized = tuple((j, q) for j, q in enumerate(entry.allocation) if 0 < q < 1)
        lotteries.append((entry.price, sure, randomized))

    def value_of(mask: int) -> Fraction:
        return sum((v[j] for j in range(n) if mask >> j & 1), Fraction(0))

    @lru_cache(maxsize=None)
    def V(won: int, t: int) -> Fraction:
        if t == 0:
            return Fraction(0)
        best = Fraction(0)
        for price, sure, randomized in lotteries:
            fresh = [(j, q) for j, q in randomized if not won >> j & 1]
            sure_new = sure & ~won
            expected = -price
            for outcome in range(1 << len(fresh)):
                prob = Fraction(1)
                wins = sure_new
                for b, (j, q) in enumerate(fresh):
                    if outcome >> b & 1:
                        prob *= q
                        wins |= 1 << j
                    else:
                        prob *= 1 - q
                expected += prob * (value_of(wins) + V(won | wins, t - 1))
            if expected > best:
                best = expected
        return best

    result = V(0, k)
    logger.debug(f"Adaptive DP visited {V.cache_info().currsize} states")
    return result


def verify_adaptive_buyk_ic(
    menu: Menu,
    types: TypesLike,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> ICVerdict:
    """Checks IC against adaptive buyers: for every type the best single-entry
    utility must be at least the value of the optimal adaptive strategy with
    ``k`` purchases. Witnesses carry no multiset, since adaptive strategies are
    decision trees.

    :param menu: the menu to check
    :param types: valuations, or a distribution whose support is used
    :param k: maximal number of purchases
    :param config: enumeration caps
    """
    vectors = as_types(types, menu.n)
    singles = best_responses(vectors, menu, 1, config=config)
    witnesses = []
    for v, single in zip(vectors, singles):
        value = adaptive_value(v, menu, k, config=config)
        if value > single.utility:
            witnesses.append(
                ICWitness(
                    valuation=v,
                    multiset=None,
                    single_utility=single.utility,
                    multiset_utility=value,
                )
            )
    if witnesses:
        logger.info(
            f"Menu is not adaptive buy-{k} IC: {len(witnesses)} deviating types"
        )
    return ICVerdict(ic=not witnesses, witnesses=tuple(witnesses))
