from fractions import Fraction

import pytest

from pybuyk.buyer.revenue import revenue_under_buyk
from pybuyk.constructions.instances import random_distribution, random_menu
from pybuyk.constructions.surgery import filter_min_price
from pybuyk.core.types import DiscreteDistribution, Menu
from pybuyk.utils.config import ParallelConfig

F = Fraction


@pytest.mark.parametrize("k, expected", [(1, F(14, 3)), (2, F(4)), (3, F(4))])
def test_coffee_revenue(coffee, k, expected):
    dist, menu = coffee
    assert revenue_under_buyk(dist, menu, k) == expected


def test_empty_menu(coffee):
    dist, _ = coffee
    assert revenue_under_buyk(dist, Menu(2), 2) == 0


def test_residual_mass_pays_nothing(coffee):
    _, menu = coffee
    dist = DiscreteDistribution(2, (((2, 0), F(1, 2)),))
    assert revenue_under_buyk(dist, menu, 1) == 1


def test_parallel_revenue(coffee):
    dist, menu = coffee
    config = ParallelConfig(backend="joblib", joblib_backend="threading")
    assert revenue_under_buyk(dist, menu, 1, parallel_config=config, n_jobs=2) == F(
        14, 3
    )


@pytest.mark.parametrize("seed", [11], indirect=True)
def test_permutation_invariance(rng):
    for _ in range(50):
        n = int(rng.integers(1, 4))
        menu = random_menu(rng, n, int(rng.integers(1, 5)))
        dist = random_distribution(rng, n, 3, uniform=False)
        order = [int(i) for i in rng.permutation(len(menu))]
        permuted = Menu(n, tuple(menu.entries[i] for i in order))
        for k in (1, 2):
            assert revenue_under_buyk(dist, menu, k) == revenue_under_buyk(
                dist, permuted, k
            )


@pytest.mark.slow
@pytest.mark.parametrize("n_random", [200], indirect=True)
def test_price_filter_loses_at_most_threshold(rng, n_random):
    """Dropping the entries priced below c from a buy-one IC menu loses at
    most c in revenue: every type keeps its entry or paid less than c."""
    for _ in range(n_random):
        n = int(rng.integers(1, 3))
        menu = random_menu(rng, n, int(rng.integers(1, 4)))
        dist = random_distribution(rng, n, 3)
        revenue = revenue_under_buyk(dist, menu, 1)
        for c in sorted(set(menu.prices)):
            filtered = filter_min_price(menu, c)
            assert revenue_under_buyk(dist, filtered, 1) >= revenue - c
