"""
Domain vocabulary: allocation and valuation vectors, menus, finite
distributions of additive valuations and multisets of menu entries.

All values are immutable. Constructors coerce their inputs to exact
rationals but do not enforce the domain invariants, so that
:func:`~pybuyk.core.validation.validate` can report every violation of a
malformed instance at once. Operations raise when they meet inconsistent
dimensions.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple

from pybuyk.utils.numeric import RationalLike, as_rational, as_vector, l1_norm

__all__ = [
    "Vector",
    "AllocationVector",
    "ValuationType",
    "EntryMultiset",
    "MenuEntry",
    "Menu",
    "DiscreteDistribution",
    "zero_vector",
    "is_binary",
]

Vector = Tuple[Fraction, ...]
AllocationVector = Vector
ValuationType = Vector
EntryMultiset = Tuple[int, ...]
"""Nondecreasing tuple of 1-based menu indices. Index 0 is the implicit null
entry and is never stored in results."""


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def is_binary(v: Sequence[Fraction]) -> bool:
    """Whether every coordinate is 0 or 1."""
    return all(x == 0 or x == 1 for x in v)


class MenuEntry(NamedTuple):
    """A lottery offered by a menu: an allocation vector and its price."""

    price: Fraction
    allocation: AllocationVector

    @property
    def is_deterministic(self) -> bool:
        return is_binary(self.allocation)


@dataclass(frozen=True)
class Menu:
    """A mechanism given by its menu of lotteries over ``n`` items.

    The null entry (price 0, zero allocation) is always available to the buyer
    at index 0 and is never stored. Stored entries are addressed with 1-based
    indices, in the order they were given; duplicates are allowed.

    :param n: number of items
    :param entries: the priced allocations on offer
    """

    n: int
    entries: Tuple[MenuEntry, ...] = ()
    _canonical: Tuple[int, ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        entries = tuple(
            MenuEntry(as_rational(e[0]), as_vector(e[1])) for e in self.entries
        )
        object.__setattr__(self, "entries", entries)
        order = sorted(
            range(1, len(entries) + 1),
            key=lambda i: (entries[i - 1].price, entries[i - 1].allocation, i),
        )
        object.__setattr__(self, "_canonical", tuple(order))

    @classmethod
    def from_pairs(
        cls,
        n: int,
        pairs: Iterable[Tuple[RationalLike, Iterable[RationalLike]]],
    ) -> "Menu":
        """Builds a menu from ``(price, allocation)`` pairs.

        >>> Menu.from_pairs(1, [(2, ["1/2"])]).entries[0].allocation
        (Fraction(1, 2),)
        """
        return cls(n, tuple(MenuEntry(p, q) for p, q in pairs))  # type: ignore

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[MenuEntry]:
        return iter(self.entries)

    def entry(self, index: int) -> MenuEntry:
        """Entry at a 1-based index, the null entry for index 0.

        :raises IndexError: if the index is not valid for the menu
        """
        if index == 0:
            return MenuEntry(Fraction(0), zero_vector(self.n))
        if not 1 <= index <= len(self.entries):
            raise IndexError(f"Menu index {index} out of range 0..{len(self)}")
        return self.entries[index - 1]

    @property
    def canonical_order(self) -> Tuple[int, ...]:
        """1-based indices sorted by price, then allocation, then original
        index. Lexicographic tie-breaking of the buyer uses ranks in this
        order, which makes results invariant under permutation of entries."""
        return self._canonical

    @property
    def prices(self) -> List[Fraction]:
        return [e.price for e in self.entries]

    @property
    def is_deterministic(self) -> bool:
        return all(e.is_deterministic for e in self.entries)

    def subset(self, indices: Iterable[int]) -> "Menu":
        """Sub-menu with the entries at the given 1-based indices, in the
        order given."""
        return Menu(self.n, tuple(self.entry(i) for i in indices if i != 0))


@dataclass(frozen=True)
class DiscreteDistribution:
    """A finite distribution of additive valuations over ``n`` items.

    The probabilities may sum to less than one. The residual mass sits on the
    zero valuation, which never pays anything and is therefore not stored.

    :param n: number of items
    :param support: pairs of valuation and probability
    """

    n: int
    support: Tuple[Tuple[ValuationType, Fraction], ...] = ()

    def __post_init__(self):
        support = tuple((as_vector(v), as_rational(p)) for v, p in self.support)
        object.__setattr__(self, "support", support)

    @classmethod
    def uniform(
        cls, n: int, types: Iterable[Iterable[RationalLike]]
    ) -> "DiscreteDistribution":
        """Equiprobable distribution over the given (distinct) types."""
        vectors = [as_vector(v) for v in types]
        if not vectors:
            return cls(n, ())
        p = Fraction(1, len(vectors))
        return cls(n, tuple((v, p) for v in vectors))

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self) -> Iterator[Tuple[ValuationType, Fraction]]:
        return iter(self.support)

    @property
    def types(self) -> List[ValuationType]:
        return [v for v, _ in self.support]

    @property
    def probabilities(self) -> List[Fraction]:
        return [p for _, p in self.support]

    @property
    def total_mass(self) -> Fraction:
        return sum(self.probabilities, Fraction(0))

    @property
    def residual_mass(self) -> Fraction:
        """Probability of the zero valuation."""
        return 1 - self.total_mass

    def bundle_values(self) -> List[Fraction]:
        """Value of the grand bundle for every support type."""
        return [l1_norm(v) for v in self.types]
