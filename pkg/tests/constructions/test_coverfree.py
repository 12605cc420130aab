import pytest

from pybuyk.constructions.coverfree import (
    CoverFreeFamily,
    greedy_coverfree,
    kautz_singleton,
    maximum_coverfree,
    verify_coverfree,
)
from pybuyk.utils.config import EnumerationConfig
from pybuyk.utils.errors import BudgetExceededError, PreconditionError


@pytest.mark.parametrize(
    "sets, k, holds",
    [
        ([{1}, {2}, {3}], 2, True),
        ([{1, 2}, {2, 3}, {1, 3}], 1, True),
        ([{1, 2}, {2, 3}, {1, 3}], 2, False),
        ([{1}, {1, 2}], 1, False),
        ([{1}, {2}], 3, True),
        ([{1, 2}], 5, True),
    ],
)
def test_verify_coverfree(sets, k, holds):
    assert bool(verify_coverfree(sets, k)) is holds


def test_verify_counterexample():
    check = verify_coverfree([{1}, {1, 2}], 1)
    assert not check.holds
    assert check.counterexample == ((1,), ((1, 2),))


def test_verify_invalid():
    with pytest.raises(ValueError):
        verify_coverfree([{1}], 0)
    with pytest.raises(BudgetExceededError):
        verify_coverfree(
            [{1}, {2}, {3}], 1, config=EnumerationConfig(max_coverfree_tuples=2)
        )


def test_family_indicators():
    family = CoverFreeFamily(3, ({3, 1}, {2}), 1)
    assert family.sets == ((1, 3), (2,))
    assert family.indicators() == [(1, 0, 1), (0, 1, 0)]
    assert len(family) == 2


@pytest.mark.parametrize(
    "n, k, expected",
    [
        (1, 1, ((1,),)),
        (1, 4, ((1,),)),
        (3, 1, ((1,), (2,), (3,))),
        (4, 1, ((1,), (2,), (3,), (4,))),
        (4, 3, ((1,), (2,), (3,), (4,))),
    ],
)
def test_greedy(n, k, expected):
    family = greedy_coverfree(n, k)
    assert family.sets == expected
    assert family.ground_size == n and family.k == k


@pytest.mark.parametrize("n, k", [(5, 1), (5, 2), (6, 2)])
def test_greedy_is_coverfree(n, k):
    family = greedy_coverfree(n, k)
    assert verify_coverfree(family, k)
    assert len(family) >= n


@pytest.mark.parametrize("n, k, size", [(3, 1, 3), (4, 1, 6), (3, 2, 3)])
def test_maximum(n, k, size):
    family = maximum_coverfree(n, k)
    assert len(family) == size
    assert verify_coverfree(family, k)
    assert len(family) >= len(greedy_coverfree(n, k))


def test_ground_set_limits():
    with pytest.raises(ValueError):
        greedy_coverfree(0, 1)
    with pytest.raises(ValueError):
        maximum_coverfree(3, 0)
    with pytest.raises(BudgetExceededError):
        greedy_coverfree(13, 1)
    with pytest.raises(BudgetExceededError):
        maximum_coverfree(4, 1, config=EnumerationConfig(max_coverfree_tuples=3))


@pytest.mark.parametrize(
    "q, m, size, k",
    [(2, 1, 2, 1), (2, 2, 4, 1), (3, 1, 3, 2), (3, 2, 9, 2), (5, 2, 25, 4)],
)
def test_kautz_singleton(q, m, size, k):
    family = kautz_singleton(q, m)
    assert len(family) == size
    assert family.ground_size == q * q
    assert family.k == k
    assert all(len(s) == q for s in family.sets)
    assert verify_coverfree(family, k)


@pytest.mark.parametrize("q, m, cap", [(3, 2, 10), (3, 2, 251), (5, 2, 265_649)])
def test_kautz_singleton_over_budget(q, m, cap):
    with pytest.raises(BudgetExceededError):
        kautz_singleton(q, m, config=EnumerationConfig(max_coverfree_tuples=cap))


def test_kautz_singleton_sets():
    assert kautz_singleton(3, 1).sets == ((1, 4, 7), (2, 5, 8), (3, 6, 9))
    family = kautz_singleton(3, 2)
    assert family.sets[0] == (1, 4, 7)
    assert family.sets[1] == (2, 5, 8)
    # f(x) = x
    assert family.sets[3] == (1, 5, 9)


@pytest.mark.parametrize("q, m", [(4, 2), (1, 1), (3, 0), (3, 4)])
def test_kautz_singleton_invalid(q, m):
    with pytest.raises(PreconditionError):
        kautz_singleton(q, m)
