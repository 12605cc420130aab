"""
Built-in instances and random generators of small instances.

The random generators draw exact rationals on coarse grids from a numpy
:class:`~numpy.random.Generator`, so that every run is reproducible from a
seed and exhaustive checks stay cheap.
"""
import logging
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from pybuyk.benchmarks.posted import brev, srev
from pybuyk.core.types import DiscreteDistribution, Menu, MenuEntry, Vector
from pybuyk.menugap.sequences import SequencePair
from pybuyk.utils.errors import PostconditionError
from pybuyk.utils.numeric import random_rational_vector

__all__ = [
    "coffee_shop_instance",
    "srev_gap_instance",
    "random_distribution",
    "random_menu",
    "random_sequence_pair",
]

logger = logging.getLogger(__name__)


def coffee_shop_instance() -> Tuple[DiscreteDistribution, Menu]:
    """Two items, a coffee and a bagel. Three equally likely customers value
    them at (2, 0), (0, 4) and (4, 6). The menu sells the coffee at 2, the
    bagel at 4 and both at 8.

    The menu is buy-one IC, but the third customer prefers buying coffee and
    bagel separately for 6 once allowed two purchases.
    """
    dist = DiscreteDistribution.uniform(2, [(2, 0), (0, 4), (4, 6)])
    menu = Menu.from_pairs(2, [(2, (1, 0)), (4, (0, 1)), (8, (1, 1))])
    return dist, menu


def srev_gap_instance(n: int) -> DiscreteDistribution:
    """Equal-revenue instance where item pricing earns ``n`` and bundling
    earns less than 2.

    Type ``j`` values only item ``j``, at ``2**j``, and has probability
    ``2**-j``. Each item earns exactly 1 at price ``2**j``, while any bundle
    price reaches a geometrically vanishing mass.

    :param n: number of items
    :raises PostconditionError: if the revenues are not as stated
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    support = []
    for j in range(1, n + 1):
        v = tuple(Fraction(2**j if d == j - 1 else 0) for d in range(n))
        support.append((v, Fraction(1, 2**j)))
    dist = DiscreteDistribution(n, tuple(support))
    s, b = srev(dist).value, brev(dist).value
    if s != n or b >= 2:
        raise PostconditionError(f"SRev={s}, BRev={b} for n={n}", dist)
    return dist


def random_distribution(
    rng: np.random.Generator,
    n: int,
    size: int,
    *,
    max_value: int = 4,
    max_denominator: int = 2,
    uniform: bool = True,
) -> DiscreteDistribution:
    """Random distribution with at most ``size`` distinct non-zero types.

    :param rng: numpy random generator
    :param n: number of items
    :param size: number of draws; duplicates and zero vectors are dropped
    :param max_value: largest value of a coordinate
    :param max_denominator: denominator of the value grid
    :param uniform: equal probabilities if set, otherwise random positive
        weights on a grid of step 1/8, normalized to a total mass of at most
        one
    """
    types: List[Vector] = []
    for _ in range(size):
        v = random_rational_vector(
            rng, n, max_denominator=max_denominator, high=max_value
        )
        if any(v) and v not in types:
            types.append(v)
    if uniform:
        return DiscreteDistribution.uniform(n, types)
    weights = [Fraction(int(w), 8) for w in rng.integers(1, 8, size=len(types))]
    total = sum(weights, Fraction(0))
    scale = Fraction(1) if total <= 1 else 1 / total
    return DiscreteDistribution(n, tuple((v, w * scale) for v, w in zip(types, weights)))


def random_menu(
    rng: np.random.Generator,
    n: int,
    size: int,
    *,
    max_price: int = 4,
    max_denominator: int = 2,
    deterministic: bool = False,
) -> Menu:
    """Random menu of ``size`` entries with allocations in ``[0, 1]^n`` and
    positive prices up to ``max_price``.

    :param deterministic: draw 0/1 allocations only
    """
    entries = []
    for _ in range(size):
        if deterministic:
            allocation = tuple(
                Fraction(int(a)) for a in rng.integers(0, 1, size=n, endpoint=True)
            )
        else:
            allocation = random_rational_vector(rng, n, max_denominator=max_denominator)
        price = Fraction(
            int(rng.integers(1, max_price * max_denominator, endpoint=True)),
            max_denominator,
        )
        entries.append(MenuEntry(price, allocation))
    return Menu(n, tuple(entries))


def random_sequence_pair(
    rng: np.random.Generator,
    n: int,
    length: int,
    *,
    max_value: int = 4,
    max_denominator: int = 4,
    binary: bool = False,
) -> SequencePair:
    """Random sequences with non-zero valuations.

    :param rng: numpy random generator
    :param n: dimension
    :param length: number of pairs ``(x_i, q_i)``
    :param max_value: largest coordinate of a valuation
    :param max_denominator: denominator of the grids
    :param binary: draw 0/1 vectors only
    """
    X: List[Vector] = []
    Q: List[Vector] = []
    d = 1 if binary else max_denominator
    high = 1 if binary else max_value
    while len(X) < length:
        x = random_rational_vector(rng, n, max_denominator=d, high=high)
        if not any(x):
            continue
        X.append(x)
        Q.append(random_rational_vector(rng, n, max_denominator=d))
    return SequencePair.from_pairs(n, X, Q)
