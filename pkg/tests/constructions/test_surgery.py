import logging
from fractions import Fraction
from itertools import combinations, product

import pytest

from pybuyk.buyer.ic import verify_buyk_ic
from pybuyk.constructions.surgery import (
    band_index,
    band_split,
    extract_sequences,
    filter_min_price,
    upper_bound_pipeline,
)
from pybuyk.core.types import DiscreteDistribution, Menu
from pybuyk.utils.config import PipelineConfig
from pybuyk.utils.errors import PreconditionError

F = Fraction


def test_filter_min_price(coffee):
    _, menu = coffee
    assert filter_min_price(menu, 3).prices == [4, 8]
    assert filter_min_price(menu, 2).prices == [2, 4, 8]
    assert len(filter_min_price(menu, 9)) == 0


@pytest.mark.parametrize(
    "price, c, base, expected",
    [
        (2, 2, 3, 0),
        (5, 2, 3, 0),
        (6, 2, 3, 1),
        (17, 2, 3, 1),
        (18, 2, 3, 2),
        ("1/2", "1/4", 2, 1),
        (100, 1, 10, 2),
    ],
)
def test_band_index(price, c, base, expected):
    assert band_index(price, c, base) == expected


def test_band_index_invalid():
    with pytest.raises(PreconditionError):
        band_index(1, 2, 3)
    with pytest.raises(ValueError):
        band_index(1, 0, 3)
    with pytest.raises(ValueError):
        band_index(1, 1, 1)


def test_band_split(coffee):
    _, menu = coffee
    even, odd = band_split(menu, 2, 3)
    assert even.prices == [2, 4]
    assert odd.prices == [8]
    with pytest.raises(PreconditionError):
        band_split(menu, 3, 3)


def test_extract_coffee(coffee):
    dist, menu = coffee
    pair, trace = extract_sequences(dist, menu, 1, 2, base=3)
    assert pair.X == ((2, 0), (4, 6))
    assert pair.Q == ((0, 0), (1, 0), (1, 1))
    assert trace.menugap == F(8, 5)
    assert [b.band for b in trace.bins] == [0, 1]
    first, second = trace.bins
    assert first.mass == F(2, 3)
    assert first.bound == F(5, 3)
    assert first.min_price == 2
    assert second.mass == second.bound == F(1, 3)
    assert trace.bound is None
    assert trace.holds


def test_extract_rejects_cheap_purchases(coffee):
    dist, menu = coffee
    with pytest.raises(PreconditionError):
        extract_sequences(dist, menu, 1, 3)
    with pytest.raises(ValueError):
        extract_sequences(dist, menu, 1, 2, delta=-1)


def test_extract_attributes_to_most_expensive_entry(coffee):
    """With two purchases the third customer buys coffee and bagel, and is
    attributed to the bagel band."""
    dist, menu = coffee
    pair, trace = extract_sequences(dist, menu, 2, 2, base=2)
    assert [b.band for b in trace.bins] == [0, 1]
    assert [b.mass for b in trace.bins] == [F(1, 3), F(2, 3)]
    assert pair.X == ((2, 0), (0, 4))
    assert pair.Q == ((0, 0), (1, 0), (0, 1))
    assert trace.bins[1].min_price == 4


def test_extract_ignores_non_buyers():
    dist = DiscreteDistribution.uniform(1, [(1,), (5,)])
    menu = Menu.from_pairs(1, [(4, (1,))])
    pair, trace = extract_sequences(dist, menu, 1, 4)
    assert pair.X == ((5,),)
    assert trace.bins[0].mass == F(1, 2)


def test_pipeline_coffee(coffee):
    dist, menu = coffee
    trace = upper_bound_pipeline(dist, menu, 1)
    assert trace.c == F(7, 150)
    assert trace.base == 2
    assert trace.ic
    values = {s.name: s.value for s in trace.stages}
    assert values == {
        "input": F(14, 3),
        "filter": F(14, 3),
        "even": F(8, 3),
        "odd": F(10, 3),
        "selected": F(10, 3),
        "sequences": F(8, 5),
    }
    assert trace.stage("selected").menu.prices == [2, 8]
    assert trace.sequences.X == ((2, 0), (4, 6))
    assert trace.bound == F(693, 4000)
    assert trace.holds
    for stage in trace.stages:
        assert stage.evaluate(dist, 1) == stage.value
    with pytest.raises(KeyError):
        trace.stage("missing")


def test_pipeline_parameters(coffee):
    dist, menu = coffee
    pipeline = PipelineConfig(c=F(2), delta=F(1, 2), base=3)
    trace = upper_bound_pipeline(dist, menu, 1, pipeline=pipeline)
    assert trace.c == 2 and trace.base == 3
    assert trace.stage("even").menu.prices == [2, 4]
    assert trace.bound == (F(14, 3) - 2) / (8 * F(10, 3) * F(3, 2))
    assert trace.holds


def test_pipeline_zero_revenue():
    dist = DiscreteDistribution.uniform(1, [(1,)])
    trace = upper_bound_pipeline(dist, Menu.from_pairs(1, [(5, (1,))]), 1)
    assert [s.name for s in trace.stages] == ["input", "sequences"]
    assert trace.c == 0
    assert len(trace.sequences) == 0
    assert trace.bound == 0
    assert trace.holds


def test_pipeline_warns_on_non_ic_menu(coffee, caplog):
    dist, menu = coffee
    with caplog.at_level(logging.WARNING):
        trace = upper_bound_pipeline(dist, menu, 2)
    assert trace.ic is False
    assert "not buy-2 IC" in caplog.text


ALLOCATIONS = [(1, 0), (0, 1), (1, 1)]
TYPES = [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)]


def tiny_menus():
    for size in range(1, len(ALLOCATIONS) + 1):
        for allocations in combinations(ALLOCATIONS, size):
            for prices in product((1, 2, 3), repeat=size):
                yield Menu.from_pairs(2, zip(prices, allocations))


def tiny_distributions():
    for size in range(1, 4):
        for types in combinations(TYPES, size):
            yield DiscreteDistribution.uniform(2, types)


@pytest.mark.slow
@pytest.mark.parametrize("k", [1, 2])
def test_surgery_bound_exhaustive(k):
    """Every tiny buy-k IC menu yields sequences whose gap sum is at least
    (R - c) / (2 (k+1)^2 BRev)."""
    checked = 0
    for dist in tiny_distributions():
        for menu in tiny_menus():
            if not verify_buyk_ic(menu, dist, k):
                continue
            trace = upper_bound_pipeline(dist, menu, k)
            assert trace.holds, trace
            checked += 1
    assert checked > 0
