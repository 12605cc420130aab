from fractions import Fraction

import pytest

from pybuyk.benchmarks.posted import (
    brev,
    bundle_price_revenue,
    item_prices_revenue,
    item_pricing_menu,
    srev,
)
from pybuyk.buyer.ic import verify_buyk_ic
from pybuyk.buyer.revenue import revenue_under_buyk
from pybuyk.constructions.instances import random_distribution, srev_gap_instance
from pybuyk.core.types import DiscreteDistribution
from pybuyk.utils.errors import DimensionMismatchError

F = Fraction


def test_coffee_bundling(coffee):
    dist, _ = coffee
    result = brev(dist)
    assert result.value == F(10, 3)
    assert result.certificate == 10
    assert bundle_price_revenue(dist, 4) == F(8, 3)
    assert bundle_price_revenue(dist, 2) == 2


def test_coffee_item_pricing(coffee):
    dist, _ = coffee
    result = srev(dist)
    assert result.value == 4
    assert result.certificate == (2, 4)
    assert item_prices_revenue(dist, result.certificate) == 4


def test_point_mass():
    dist = DiscreteDistribution(2, (((1, "1/2"), 1),))
    assert brev(dist).value == F(3, 2)
    assert srev(dist).value == F(3, 2)


def test_empty_support():
    dist = DiscreteDistribution(3)
    assert brev(dist).value == 0
    assert brev(dist).certificate == 0
    assert srev(dist).value == 0
    assert srev(dist).certificate == (0, 0, 0)


def test_lowest_optimal_price():
    """Prices 1 and 2 both earn 1; the lower one is reported."""
    dist = DiscreteDistribution(1, (((1,), "1/2"), ((2,), "1/2")))
    assert brev(dist).certificate == 1
    assert srev(dist).certificate == (1,)


@pytest.mark.parametrize("n", range(2, 11))
def test_srev_gap(n):
    dist = srev_gap_instance(n)
    assert srev(dist).value == n
    assert brev(dist).value < 2


def test_item_prices_dimension(coffee):
    dist, _ = coffee
    with pytest.raises(DimensionMismatchError):
        item_prices_revenue(dist, (1,))


def test_item_pricing_menu(coffee):
    dist, _ = coffee
    menu = item_pricing_menu((2, 4))
    assert sorted(menu.prices) == [2, 4, 6]
    assert menu.is_deterministic
    assert verify_buyk_ic(menu, dist, 3)
    assert revenue_under_buyk(dist, menu, 1) == srev(dist).value


@pytest.mark.parametrize("seed", [7, 8], indirect=True)
def test_support_prices_suffice(rng):
    """No price on a dense grid beats the best support price."""
    grid = [F(i, 4) for i in range(1, 4 * 12 + 1)]
    for _ in range(30):
        n = int(rng.integers(1, 4))
        dist = random_distribution(rng, n, 4, uniform=False)
        result = brev(dist)
        assert bundle_price_revenue(dist, result.certificate) == result.value
        assert all(bundle_price_revenue(dist, p) <= result.value for p in grid)
        if dist.types:
            assert result.certificate in dist.bundle_values()
        items = srev(dist)
        assert item_prices_revenue(dist, items.certificate) == items.value
        for j in range(n):
            for p in grid:
                prices = list(items.certificate)
                prices[j] = p
                assert item_prices_revenue(dist, prices) <= items.value
