from fractions import Fraction

import pytest

from pybuyk.core.types import DiscreteDistribution, Menu, MenuEntry, is_binary

F = Fraction


def test_menu_coerces_entries():
    menu = Menu.from_pairs(2, [("1/2", (1, "1/3")), (3, (0, 1))])
    assert menu.entries[0] == MenuEntry(F(1, 2), (F(1), F(1, 3)))
    assert menu.prices == [F(1, 2), F(3)]
    assert len(menu) == 2
    assert not menu.is_deterministic


def test_null_entry_and_indices(coffee):
    _, menu = coffee
    assert menu.entry(0) == MenuEntry(F(0), (F(0), F(0)))
    assert menu.entry(3).price == 8
    with pytest.raises(IndexError):
        menu.entry(4)
    with pytest.raises(IndexError):
        menu.entry(-1)


@pytest.mark.parametrize(
    "pairs, expected",
    [
        ([(2, (1, 0)), (4, (0, 1)), (8, (1, 1))], (1, 2, 3)),
        ([(8, (1, 1)), (2, (1, 0)), (4, (0, 1))], (2, 3, 1)),
        # Same price: allocation decides, then the original index
        ([(1, (1, 0)), (1, (0, 1)), (1, (0, 1))], (2, 3, 1)),
    ],
)
def test_canonical_order(pairs, expected):
    assert Menu.from_pairs(2, pairs).canonical_order == expected


def test_canonical_order_excluded_from_equality():
    a = Menu.from_pairs(1, [(1, (1,))])
    b = Menu.from_pairs(1, [(1, (1,))])
    assert a == b
    assert hash(a) == hash(b)


def test_subset_keeps_given_order(coffee):
    _, menu = coffee
    sub = menu.subset([3, 0, 1])
    assert sub.prices == [8, 2]


def test_duplicates_allowed():
    menu = Menu.from_pairs(1, [(1, (1,)), (1, (1,))])
    assert len(menu) == 2


def test_distribution():
    dist = DiscreteDistribution(2, (((1, 0), "1/4"), ((0, 3), "1/2")))
    assert dist.total_mass == F(3, 4)
    assert dist.residual_mass == F(1, 4)
    assert dist.bundle_values() == [1, 3]
    assert dist.types == [(F(1), F(0)), (F(0), F(3))]
    assert list(dist) == list(dist.support)


def test_uniform_distribution(coffee):
    dist, _ = coffee
    assert dist.probabilities == [F(1, 3)] * 3
    assert DiscreteDistribution.uniform(3, []).support == ()


@pytest.mark.parametrize(
    "v, expected", [((0, 1, 1), True), ((F(1, 2), 1), False), ((), True)]
)
def test_is_binary(v, expected):
    assert is_binary(tuple(F(x) for x in v)) == expected
