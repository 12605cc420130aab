r"""
The Lot operator and the utility of buying a multiset of menu entries.

Buying several lotteries draws each one independently, so the buyer receives
item ``j`` unless every lottery misses it:

.. math::

    \mathrm{Lot}(q_1, \dots, q_m)_j = 1 - \prod_i (1 - q_{i,j})
"""
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from pybuyk.core.types import AllocationVector, EntryMultiset, Menu, ValuationType
from pybuyk.utils.errors import DimensionMismatchError
from pybuyk.utils.numeric import dot

__all__ = ["lot", "miss_probabilities", "multiset_utility"]


def miss_probabilities(
    allocs: Iterable[Sequence[Fraction]], n: Optional[int] = None
) -> AllocationVector:
    """Per-item probability that none of the lotteries allocates the item.

    :param allocs: allocation vectors
    :param n: dimension, required when ``allocs`` may be empty
    :raises DimensionMismatchError: if the vectors disagree in length
    :raises ValueError: if ``allocs`` is empty and ``n`` is not given
    """
    miss = None if n is None else [Fraction(1)] * n
    for q in allocs:
        if miss is None:
            miss = [Fraction(1)] * len(q)
        if len(q) != len(miss):
            raise DimensionMismatchError(
                f"Allocation of length {len(q)} in a lot of dimension {len(miss)}"
            )
        miss = [m * (1 - x) for m, x in zip(miss, q)]
    if miss is None:
        raise ValueError("The dimension of an empty lot must be given")
    return tuple(miss)


def lot(
    allocs: Iterable[Sequence[Fraction]], n: Optional[int] = None
) -> AllocationVector:
    """Expected allocation obtained by buying all lotteries in ``allocs``.

    >>> from fractions import Fraction as F
    >>> lot([(F(1, 2), F(1, 2)), (F(1, 2), F(1, 2))])
    (Fraction(3, 4), Fraction(3, 4))

    :param allocs: allocation vectors, possibly with repetitions
    :param n: dimension, needed for an empty list, which yields the zero
        vector
    :return: the combined allocation
    """
    return tuple(1 - m for m in miss_probabilities(allocs, n))


def multiset_utility(v: ValuationType, lam: EntryMultiset, menu: Menu) -> Fraction:
    """Utility of an additive buyer purchasing every entry of ``lam`` (with
    multiplicity): value of the combined lottery minus the total price.

    :param v: valuation
    :param lam: 1-based menu indices; 0 stands for the null entry
    :param menu: the menu
    :raises IndexError: for an index not valid for the menu
    :raises DimensionMismatchError: if ``v`` and the menu disagree
    """
    if len(v) != menu.n:
        raise DimensionMismatchError(
            f"Valuation of length {len(v)} for a menu over {menu.n} items"
        )
    entries = [menu.entry(i) for i in lam]
    allocation = lot((e.allocation for e in entries), menu.n)
    return dot(v, allocation) - sum((e.price for e in entries), Fraction(0))
