from fractions import Fraction

import pytest
from hypothesis import given, settings

from pybuyk.constructions.instances import random_sequence_pair
from pybuyk.menugap.certificates import telescoping_certificate
from pybuyk.menugap.gap import (
    GapEntry,
    gap,
    menugap,
    normalized_gap,
    prune_nonpositive,
)
from pybuyk.menugap.sequences import SequencePair, standard_basis_sequences
from pybuyk.utils.config import EnumerationConfig
from pybuyk.utils.errors import BudgetExceededError

from .strategies import sequence_pairs

F = Fraction


@pytest.mark.parametrize("n", range(2, 7))
def test_standard_basis_is_tight(n):
    report = menugap(standard_basis_sequences(n), n)
    assert report.total == n
    assert all(e.gap == 1 for e in report.entries)


def test_witness_is_last_minimal_multiset():
    pair = standard_basis_sequences(2)
    value, witness = gap(pair, 2, 2)
    assert value == 1
    assert witness == (1, 1)
    assert gap(pair, 2, 1) == (1, (0, 0))


def test_negative_gap(overlapping_pair):
    value, witness = gap(overlapping_pair, 1, 2)
    assert value == -1
    assert witness == (1,)
    assert normalized_gap(overlapping_pair, 1, 2) == F(-1, 2)
    report = menugap(overlapping_pair, 1)
    assert report.total == F(1, 2)
    assert [e.index for e in report.entries] == [1, 2]


def test_prune(overlapping_pair):
    pruned = prune_nonpositive(overlapping_pair, 1)
    assert len(pruned) == 1
    assert pruned.q(1) == (1, 1)
    assert menugap(pruned, 1).total == 1


def test_prune_recomputes_after_removal():
    """Removing the first pair makes the later ones lose their competitors."""
    pair = SequencePair.from_pairs(
        1, [(1,), (1,), (1,)], [(0,), ("1/2",), ("1/2",)]
    )
    # Gaps are 0, 1/2 and 0: the first is pruned, then the third
    pruned = prune_nonpositive(pair, 1)
    assert pruned.Q == ((0,), (F(1, 2),))
    assert all(e.gap > 0 for e in menugap(pruned, 1).entries)


def test_prune_everything():
    pair = SequencePair.from_pairs(1, [(1,)], [(0,)])
    assert len(prune_nonpositive(pair, 1)) == 0


def test_normalized_gap_divides_by_norm():
    assert GapEntry(1, F(1), (0,), F(4)).normalized == F(1, 4)
    pair = SequencePair.from_pairs(1, [(2,)], [(1,)])
    assert normalized_gap(pair, 1, 1) == F(1)


def test_invalid_arguments(overlapping_pair):
    with pytest.raises(ValueError):
        gap(overlapping_pair, 0, 1)
    with pytest.raises(IndexError):
        gap(overlapping_pair, 1, 3)
    with pytest.raises(BudgetExceededError):
        menugap(standard_basis_sequences(4), 4, config=EnumerationConfig(max_multisets=5))


@settings(max_examples=50, deadline=None)
@given(sequence_pairs(n=2))
def test_gap_non_increasing_in_k(pair):
    for i in range(1, len(pair) + 1):
        values = [gap(pair, k, i)[0] for k in (1, 2, 3)]
        assert values == sorted(values, reverse=True)


@settings(max_examples=50, deadline=None)
@given(sequence_pairs(n=3))
def test_bounded_by_telescoping_sum(pair):
    assert menugap(pair, 3).total <= telescoping_certificate(pair.Q) <= 3


@pytest.mark.slow
@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("n_random", [1000], indirect=True)
def test_upper_bound_random(rng, n, n_random):
    for _ in range(n_random):
        pair = random_sequence_pair(rng, n, int(rng.integers(1, 6)))
        total = menugap(pair, n).total
        assert total <= telescoping_certificate(pair.Q) <= n


@pytest.mark.slow
@pytest.mark.parametrize("n_random", [1000], indirect=True)
def test_prune_never_decreases(rng, n_random):
    for _ in range(n_random):
        n = int(rng.integers(1, 4))
        k = int(rng.integers(1, 3))
        pair = random_sequence_pair(rng, n, int(rng.integers(1, 6)))
        pruned = prune_nonpositive(pair, k)
        assert menugap(pruned, k).total >= menugap(pair, k).total
