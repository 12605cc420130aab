"""
This module contains routines for exact numerical computations used across the
library.

All quantities are :class:`fractions.Fraction`. Floats are rejected on input
and only produced by :func:`approx`, for labelled decimal columns.
"""
import numbers
from fractions import Fraction
from itertools import chain, combinations, combinations_with_replacement
from typing import Iterable, Iterator, Sequence, Tuple, TypeVar, Union

import numpy as np

__all__ = [
    "Rational",
    "RationalLike",
    "as_rational",
    "as_vector",
    "format_rational",
    "approx",
    "dot",
    "l1_norm",
    "powerset",
    "multisets",
    "random_rational_vector",
]

Rational = Fraction
RationalLike = Union[int, Fraction, str, np.integer]

T = TypeVar("T")


def as_rational(x: RationalLike) -> Fraction:
    """Converts integers, fractions and strings of the form ``"p/q"`` or
    ``"p"`` into a reduced :class:`~fractions.Fraction`.

    >>> as_rational("2/6")
    Fraction(1, 3)

    :param x: value to convert
    :return: the exact rational
    :raises TypeError: for floats and any other non-exact type
    :raises ValueError: for malformed strings or a zero denominator
    """
    if isinstance(x, bool):
        raise TypeError("Booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        text = x.strip()
        if not text or any(c in text for c in ".eE_ "):
            raise ValueError(f"Malformed rational '{x}'")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Malformed rational '{x}'") from e
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"Expected an exact rational, got {type(x).__name__}")


def as_vector(xs: Iterable[RationalLike]) -> Tuple[Fraction, ...]:
    """Converts an iterable of rational-like values into a tuple of
    fractions."""
    return tuple(as_rational(x) for x in xs)


def format_rational(x: Fraction) -> str:
    """Canonical text of a rational: ``"p/q"`` in lowest terms, or ``"p"`` for
    integers."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def approx(x: Fraction, digits: int = 6) -> str:
    """Decimal approximation to ``digits`` significant digits. Only meant for
    display next to the exact value."""
    return f"{float(x):.{digits}g}"


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def l1_norm(x: Sequence[Fraction]) -> Fraction:
    return sum((abs(a) for a in x), Fraction(0))


def powerset(s: Sequence[T]) -> Iterator[Tuple[T, ...]]:
    """Returns an iterator for the power set of the argument.

    Subsets are generated by growing size and, within a size, in
    lexicographic order of positions in ``s``. This is the canonical subset
    order of the library.

    >>> list(powerset((1, 2)))
    [(), (1,), (2,), (1, 2)]

    :param s: The set to use
    :return: An iterator
    :raises TypeError: If the argument is not a sized iterable.
    """
    return chain.from_iterable(combinations(s, r) for r in range(len(s) + 1))


def multisets(s: Sequence[T], size: int) -> Iterator[Tuple[T, ...]]:
    """Multisets of exactly ``size`` elements of ``s`` (combinations with
    repetition), in nondecreasing position order.

    >>> list(multisets((0, 1), 2))
    [(0, 0), (0, 1), (1, 1)]
    """
    return combinations_with_replacement(s, size)


def random_rational_vector(
    rng: np.random.Generator,
    n: int,
    *,
    max_denominator: int = 4,
    low: int = 0,
    high: int = 1,
) -> Tuple[Fraction, ...]:
    """Samples ``n`` rationals uniformly from the grid of step
    ``1/max_denominator`` in ``[low, high]``.

    :param rng: numpy random generator
    :param n: length of the vector
    :param max_denominator: denominator of the grid
    :param low: smallest value
    :param high: largest value
    """
    d = max_denominator
    numerators = rng.integers(low * d, high * d, size=n, endpoint=True)
    return tuple(Fraction(int(a), d) for a in numerators)
