"""
Posted-price benchmarks: the optimal price for the grand bundle and optimal
separate prices per item.

Both optima are attained at a value in the support: any other price can be
raised to the next support value without losing a buyer. Ties among optimal
prices are broken towards the lowest one, and a buyer whose value equals the
price buys.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from pybuyk.core.types import DiscreteDistribution, Menu, MenuEntry
from pybuyk.utils.errors import DimensionMismatchError
from pybuyk.utils.numeric import RationalLike, as_rational, as_vector, powerset

__all__ = [
    "BenchmarkResult",
    "brev",
    "srev",
    "bundle_price_revenue",
    "item_prices_revenue",
    "item_pricing_menu",
]


@dataclass(frozen=True)
class BenchmarkResult:
    """Optimal revenue of a class of mechanisms and a mechanism attaining it.

    :param value: the optimal revenue
    :param certificate: an optimizing price (bundling), price vector (item
        pricing) or menu (optimal mechanism). Re-evaluating it on the
        distribution reproduces ``value`` exactly.
    """

    value: Fraction
    certificate: Union[Fraction, Tuple[Fraction, ...], Menu]


def bundle_price_revenue(dist: DiscreteDistribution, price: RationalLike) -> Fraction:
    """Revenue of selling the grand bundle at ``price``."""
    price = as_rational(price)
    mass = sum(
        (p for v, p in dist.support if sum(v, Fraction(0)) >= price), Fraction(0)
    )
    return price * mass


def item_prices_revenue(
    dist: DiscreteDistribution, prices: Iterable[RationalLike]
) -> Fraction:
    """Revenue of posting one price per item to an additive buyer, who buys
    exactly the items valued at least at their price."""
    prices = as_vector(prices)
    if len(prices) != dist.n:
        raise DimensionMismatchError(f"{len(prices)} prices for {dist.n} items")
    return sum(
        (
            p * sum((pj for vj, pj in zip(v, prices) if vj >= pj), Fraction(0))
            for v, p in dist.support
        ),
        Fraction(0),
    )


def _best_posted_price(
    values: Sequence[Fraction], probs: Sequence[Fraction]
) -> Tuple[Fraction, Fraction]:
    """Lowest revenue-maximizing posted price among the values, and its
    revenue."""
    best_price, best_revenue = Fraction(0), Fraction(0)
    for price in sorted(set(x for x in values if x > 0)):
        revenue = price * sum((p for x, p in zip(values, probs) if x >= price), Fraction(0))
        if revenue > best_revenue:
            best_price, best_revenue = price, revenue
    return best_price, best_revenue


def brev(dist: DiscreteDistribution) -> BenchmarkResult:
    """Optimal revenue from selling only the grand bundle at a posted price.

    :param dist: the distribution
    :return: the revenue and the lowest optimal price. An empty support
        yields revenue 0 at price 0.
    """
    price, revenue = _best_posted_price(dist.bundle_values(), dist.probabilities)
    return BenchmarkResult(revenue, price)


def srev(dist: DiscreteDistribution) -> BenchmarkResult:
    """Optimal revenue from posting a separate price for each item. For an
    additive buyer the problem decomposes over items.

    :param dist: the distribution
    :return: the revenue and the vector of item prices
    """
    prices: List[Fraction] = []
    total = Fraction(0)
    for j in range(dist.n):
        price, revenue = _best_posted_price(
            [v[j] for v in dist.types], dist.probabilities
        )
        prices.append(price)
        total += revenue
    return BenchmarkResult(total, tuple(prices))


def item_pricing_menu(prices: Iterable[RationalLike]) -> Menu:
    """The deterministic menu offering every non-empty set of items at the sum
    of its item prices. Item pricing is buy-many IC: buying two sets costs at
    least as much as buying their union.

    :param prices: one price per item
    """
    prices = as_vector(prices)
    n = len(prices)
    entries = []
    for items in powerset(range(n)):
        if not items:
            continue
        allocation = tuple(Fraction(int(j in items)) for j in range(n))
        entries.append(MenuEntry(sum((prices[j] for j in items), Fraction(0)), allocation))
    return Menu(n, tuple(entries))
