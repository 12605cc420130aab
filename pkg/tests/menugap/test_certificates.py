from fractions import Fraction

import pytest
from hypothesis import given, settings

from pybuyk.constructions.instances import random_sequence_pair
from pybuyk.menugap.certificates import (
    coordinate_max_witness,
    max_vector_bound,
    telescoping_certificate,
)
from pybuyk.menugap.gap import gap
from pybuyk.menugap.sequences import SequencePair, standard_basis_sequences
from pybuyk.utils.errors import DimensionMismatchError

from .strategies import sequence_pairs

F = Fraction


@pytest.mark.parametrize("n", range(1, 6))
def test_telescoping_standard_basis(n):
    assert telescoping_certificate(standard_basis_sequences(n).Q) == n


@pytest.mark.parametrize(
    "Q, expected",
    [
        ([], 0),
        ([(0, 0)], 0),
        ([(0, 0), (0, 0), (0, 0)], 0),
        ([(0, 0, 0), (1, 1, 1)], 3),
        ([(0,), ("1/2",), ("1/4",), (1,)], 1),
        ([(0, 0), ("1/2", 0), (0, "1/3"), ("3/4", "1/3")], F(13, 12)),
    ],
)
def test_telescoping_certificate(Q, expected):
    assert telescoping_certificate(Q) == expected


def test_telescoping_invalid():
    with pytest.raises(ValueError):
        telescoping_certificate([(1, 0)])
    with pytest.raises(DimensionMismatchError):
        telescoping_certificate([(0, 0), (1,)])


def test_coordinate_max_witness():
    pair = SequencePair.from_pairs(
        2, [(1, 1)] * 3, [("1/2", 1), (1, "1/2"), (1, 1)]
    )
    assert coordinate_max_witness(pair, 1) == (0, 0)
    assert coordinate_max_witness(pair, 3) == (1, 2)
    assert max_vector_bound(pair, 3) == 0
    assert max_vector_bound(pair, 1) == F(3, 2)
    with pytest.raises(IndexError):
        coordinate_max_witness(pair, 4)


@settings(max_examples=100, deadline=None)
@given(sequence_pairs(n=2, max_length=5))
def test_witness_certifies_gap(pair):
    """With k = n the coordinate-max witness is a feasible multiset, so the
    gap is at most the max-vector bound."""
    for i in range(1, len(pair) + 1):
        witness = coordinate_max_witness(pair, i)
        assert len(witness) == pair.n
        assert all(j < i for j in witness)
        assert gap(pair, pair.n, i)[0] <= max_vector_bound(pair, i)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("seed", [29], indirect=True)
def test_telescoping_at_most_n(rng, n):
    for _ in range(100):
        pair = random_sequence_pair(rng, n, int(rng.integers(0, 8)))
        assert 0 <= telescoping_certificate(pair.Q) <= n
