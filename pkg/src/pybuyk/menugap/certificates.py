r"""
Upper-bound certificates for the gap measure.

Let :math:`m_{i-1}` be the coordinate-wise maximum of :math:`q_0, \dots,
q_{i-1}`. Choosing for every coordinate the predecessor attaining that maximum
gives a multiset of :math:`n` indices whose lottery dominates :math:`m_{i-1}`,
so that with :math:`k = n`

.. math::

    \mathrm{Gap}_n^i \le x_i \cdot (q_i - m_{i-1})
        \le \|x_i\|_1 \sum_d \max(q_{i,d} - m_{i-1,d}, 0).

Summing the normalized bounds, each coordinate's increments telescope inside
:math:`[0, 1]`, hence the sum of normalized gaps with :math:`k = n` is at
most :math:`n`.
"""
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from pybuyk.core.types import Vector
from pybuyk.menugap.sequences import SequencePair
from pybuyk.utils.errors import DimensionMismatchError
from pybuyk.utils.numeric import RationalLike, as_vector, dot

__all__ = [
    "telescoping_certificate",
    "coordinate_max_witness",
    "max_vector_bound",
]


def _running_max(Q: Sequence[Vector], i: int) -> Tuple[Fraction, ...]:
    return tuple(max(q[d] for q in Q[:i]) for d in range(len(Q[0])))


def telescoping_certificate(Q: Iterable[Iterable[RationalLike]]) -> Fraction:
    """Sum over indices and coordinates of the increments of the running
    coordinate-wise maximum of ``Q``.

    :param Q: allocations ``q_0, ..., q_N`` with ``q_0`` the zero vector
    :return: a value in ``[0, n]`` bounding the sum of normalized gaps with
        ``k = n``
    """
    vectors: List[Vector] = [as_vector(q) for q in Q]
    if not vectors:
        return Fraction(0)
    n = len(vectors[0])
    if any(len(q) != n for q in vectors):
        raise DimensionMismatchError("Allocations of different lengths")
    if any(a != 0 for a in vectors[0]):
        raise ValueError("The first allocation must be the zero vector")

    total = Fraction(0)
    current = list(vectors[0])
    for q in vectors[1:]:
        for d in range(n):
            if q[d] > current[d]:
                total += q[d] - current[d]
                current[d] = q[d]
    return total


def coordinate_max_witness(pair: SequencePair, i: int) -> Tuple[int, ...]:
    """For each coordinate, the earliest predecessor index ``j < i`` at which
    ``q_j`` attains the coordinate-wise maximum of ``q_0..q_{i-1}``.

    :return: ``n`` indices in nondecreasing order, a candidate multiset for
        the gap with ``k = n``
    """
    pair.x(i)  # range check
    witness = []
    for d in range(pair.n):
        column = [pair.Q[j][d] for j in range(i)]
        witness.append(column.index(max(column)))
    return tuple(sorted(witness))


def max_vector_bound(pair: SequencePair, i: int) -> Fraction:
    """:math:`x_i \\cdot (q_i - m_{i-1})`, an upper bound on the gap at ``i``
    with ``k = n``."""
    m = _running_max(pair.Q, i)
    x, q = pair.x(i), pair.q(i)
    return dot(x, q) - dot(x, m)
