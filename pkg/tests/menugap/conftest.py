from fractions import Fraction

import pytest

from pybuyk.menugap.sequences import SequencePair


@pytest.fixture
def overlapping_pair() -> SequencePair:
    """The second allocation is dominated by the first, so its gap is
    negative for k = 1."""
    half = Fraction(1, 2)
    return SequencePair.from_pairs(2, [(1, 1), (1, 1)], [(1, 1), (half, half)])
