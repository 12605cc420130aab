from fractions import Fraction

import pytest

from pybuyk.buyer.ic import ICWitness, verify_buyk_ic
from pybuyk.constructions.instances import random_distribution, random_menu
from pybuyk.core.types import Menu

F = Fraction


def test_coffee_buy_one_ic(coffee):
    dist, menu = coffee
    verdict = verify_buyk_ic(menu, dist, 1)
    assert verdict.ic
    assert verdict
    assert verdict.witnesses == ()


def test_coffee_not_buy_two_ic(coffee):
    dist, menu = coffee
    verdict = verify_buyk_ic(menu, dist, 2)
    assert not verdict
    assert verdict.witnesses == (
        ICWitness(
            valuation=(F(4), F(6)),
            multiset=(1, 2),
            single_utility=F(2),
            multiset_utility=F(4),
            payment=F(6),
        ),
    )


@pytest.mark.parametrize("k", [1, 2, 5])
def test_grand_bundle_is_buy_many_ic(coffee, k):
    dist, _ = coffee
    menu = Menu.from_pairs(2, [(7, (1, 1))])
    assert verify_buyk_ic(menu, dist, k)


def test_types_as_list(coffee):
    _, menu = coffee
    assert verify_buyk_ic(menu, [(2, 0), (0, 4)], 2)
    assert not verify_buyk_ic(menu, [(4, 6)], 2)


def test_weak_preference_suffices():
    """Indifference between one and two purchases is not a violation."""
    menu = Menu.from_pairs(1, [(1, ["1/2"])])
    assert verify_buyk_ic(menu, [(4,)], 2)


@pytest.mark.slow
@pytest.mark.parametrize("n_random", [200], indirect=True)
def test_ic_downward_closed(rng, n_random):
    """A menu that is buy-k IC is buy-k' IC for all k' < k."""
    for _ in range(n_random):
        n = int(rng.integers(1, 4))
        menu = random_menu(rng, n, int(rng.integers(1, 4)))
        dist = random_distribution(rng, n, 3)
        verdicts = [verify_buyk_ic(menu, dist, k).ic for k in (1, 2, 3)]
        for lower, higher in zip(verdicts, verdicts[1:]):
            assert lower or not higher
