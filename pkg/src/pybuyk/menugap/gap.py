r"""
The gap measure of paired sequences.

For sequences :math:`(X, Q)` with :math:`q_0 = 0`,

.. math::

    \mathrm{Gap}_k^i(X, Q) = \min_{j_1 \le \dots \le j_k < i}
        x_i \cdot \big(q_i - \mathrm{Lot}(q_{j_1}, \dots, q_{j_k})\big)

and

.. math::

    \mathrm{MenuGap}_k(X, Q) = \sum_i \frac{\mathrm{Gap}_k^i(X, Q)}{\|x_i\|_1}.

Indices may repeat and index 0 is allowed, so "exactly k" predecessors also
covers "at most k". The minimum is always found by exhaustive enumeration of
the :math:`\binom{i+k-1}{k}` multisets.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Tuple

from pybuyk.core.lot import lot
from pybuyk.menugap.sequences import SequencePair
from pybuyk.utils.config import EnumerationConfig
from pybuyk.utils.errors import BudgetExceededError
from pybuyk.utils.numeric import dot, l1_norm, multisets

__all__ = [
    "GapEntry",
    "GapReport",
    "gap",
    "normalized_gap",
    "menugap",
    "prune_nonpositive",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapEntry:
    """Gap at one index.

    :param index: 1-based index ``i``
    :param gap: the unnormalized gap
    :param witness: the minimizing multiset of predecessor indices,
        nondecreasing
    :param norm: :math:`\\|x_i\\|_1`
    """

    index: int
    gap: Fraction
    witness: Tuple[int, ...]
    norm: Fraction

    @property
    def normalized(self) -> Fraction:
        """Gap divided by the norm."""
        return self.gap / self.norm


@dataclass(frozen=True)
class GapReport:
    k: int
    entries: Tuple[GapEntry, ...]

    @property
    def total(self) -> Fraction:
        return sum((e.normalized for e in self.entries), Fraction(0))


def _n_multisets(i: int, k: int) -> int:
    return comb(i + k - 1, k)


def gap(
    pair: SequencePair,
    k: int,
    i: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> Tuple[Fraction, Tuple[int, ...]]:
    """Unnormalized gap at index ``i`` and its witness.

    Ties are resolved towards the last minimal multiset in enumeration order
    (nondecreasing tuples, lexicographic).

    :param pair: the sequences
    :param k: number of predecessors combined
    :param i: 1-based index
    :param config: ``max_multisets`` caps the enumeration
    :return: the gap and the witness multiset
    :raises IndexError: if ``i`` is out of range
    :raises BudgetExceededError: if too many multisets would be enumerated
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    x, q = pair.x(i), pair.q(i)
    if (count := _n_multisets(i, k)) > config.max_multisets:
        raise BudgetExceededError(
            f"Gap at index {i} with k={k} needs {count} multisets, "
            f"cap is {config.max_multisets}"
        )
    value_i = dot(x, q)
    best, witness = None, ()
    for js in multisets(range(i), k):
        value = value_i - dot(x, lot((pair.Q[j] for j in js), pair.n))
        if best is None or value <= best:
            best, witness = value, js
    assert best is not None
    return best, witness


def normalized_gap(
    pair: SequencePair,
    k: int,
    i: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> Fraction:
    """Gap at ``i`` divided by :math:`\\|x_i\\|_1`."""
    value, _ = gap(pair, k, i, config=config)
    norm = l1_norm(pair.x(i))
    return value / norm


def menugap(
    pair: SequencePair, k: int, *, config: EnumerationConfig = EnumerationConfig()
) -> GapReport:
    """Sum of normalized gaps with the per-index detail.

    :param pair: the sequences
    :param k: number of predecessors combined
    :param config: enumeration caps
    """
    entries: List[GapEntry] = []
    for i in range(1, len(pair) + 1):
        value, witness = gap(pair, k, i, config=config)
        entries.append(GapEntry(i, value, witness, l1_norm(pair.x(i))))
    return GapReport(k, tuple(entries))


def prune_nonpositive(
    pair: SequencePair, k: int, *, config: EnumerationConfig = EnumerationConfig()
) -> SequencePair:
    """Repeatedly removes the earliest pair ``(x_i, q_i)`` with non-positive
    gap, recomputing the gaps after each removal, until every gap is strictly
    positive. The sum of normalized gaps never decreases.

    :param pair: the sequences
    :param k: number of predecessors combined
    :param config: enumeration caps
    :return: the remaining sub-sequences, possibly empty
    """
    kept = list(range(1, len(pair) + 1))
    current = pair
    while True:
        for i in range(1, len(current) + 1):
            value, _ = gap(current, k, i, config=config)
            if value <= 0:
                logger.debug(f"Pruning original index {kept[i - 1]} with gap {value}")
                del kept[i - 1]
                current = pair.restrict(kept)
                break
        else:
            return current
