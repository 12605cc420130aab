"""
Exact best response of a non-adaptive buy-k buyer.

The buyer picks a multiset of at most ``k`` menu entries maximizing the value
of the combined lottery minus the total price. Ties are broken in favour of the
seller: highest payment first, then the lexicographically smallest multiset of
ranks in the menu's :attr:`~pybuyk.core.types.Menu.canonical_order`.

The search is exhaustive, with two reductions that never change the result:

- entries priced above the buyer's value for the grand bundle are skipped, as
  is every multiset whose total price exceeds it (its utility is negative);
- deterministic entries are never repeated, since a second copy adds to the
  price but not to the allocation.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain
from typing import Iterable, List, Sequence, Union

from pybuyk.core.types import (
    AllocationVector,
    DiscreteDistribution,
    EntryMultiset,
    Menu,
    ValuationType,
)
from pybuyk.utils.config import EnumerationConfig, ParallelConfig
from pybuyk.utils.errors import BudgetExceededError, DimensionMismatchError
from pybuyk.utils.numeric import RationalLike, as_vector
from pybuyk.utils.parallel import MapReduceJob

__all__ = ["BestResponse", "as_types", "best_response", "best_responses"]

logger = logging.getLogger(__name__)

TypesLike = Union[DiscreteDistribution, Iterable[Iterable[RationalLike]]]


@dataclass(frozen=True)
class BestResponse:
    """Purchase of a utility-maximizing buyer.

    :param multiset: 1-based menu indices bought, nondecreasing, without the
        null entry. Empty if the buyer buys nothing.
    :param utility: value of the lot minus the payment, never negative
    :param payment: total price paid
    :param lot: allocation received
    """

    multiset: EntryMultiset
    utility: Fraction
    payment: Fraction
    lot: AllocationVector


def _check_dimensions(v: Sequence[Fraction], menu: Menu):
    if len(v) != menu.n:
        raise DimensionMismatchError(
            f"Valuation of length {len(v)} for a menu over {menu.n} items"
        )
    for i, entry in enumerate(menu.entries, start=1):
        if len(entry.allocation) != menu.n:
            raise DimensionMismatchError(
                f"Menu entry {i} has dimension {len(entry.allocation)} != {menu.n}"
            )


def best_response(
    v: Iterable[RationalLike],
    menu: Menu,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> BestResponse:
    """Computes the buy-k best response of an additive buyer.

    :param v: valuation
    :param menu: the menu on offer
    :param k: maximal number of entries bought, with repetition
    :param config: enumeration caps
    :return: the purchase chosen with seller-favourable tie-breaking
    :raises ValueError: if ``k < 1``
    :raises DimensionMismatchError: if ``v`` and the menu disagree
    :raises BudgetExceededError: if more than ``config.max_multisets``
        multisets would be enumerated
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    v = as_vector(v)
    _check_dimensions(v, menu)

    n = menu.n
    bundle_value = sum(v, Fraction(0))
    candidates = [
        i for i in menu.canonical_order if menu.entry(i).price <= bundle_value
    ]
    entries = [menu.entry(i) for i in candidates]

    best_utility, best_payment = Fraction(0), Fraction(0)
    best_ranks: List[int] = []
    best_miss = (Fraction(1),) * n
    chosen: List[int] = []
    n_visited = 0

    # Depth-first search in lexicographic order of rank tuples, so that only
    # strict improvements replace the incumbent.
    def visit(start: int, miss: tuple, payment: Fraction):
        nonlocal best_utility, best_payment, best_ranks, best_miss, n_visited
        for pos in range(start, len(entries)):
            entry = entries[pos]
            new_payment = payment + entry.price
            if new_payment > bundle_value:
                break  # entries are sorted by price
            n_visited += 1
            if n_visited > config.max_multisets:
                raise BudgetExceededError(
                    f"Best response needs more than {config.max_multisets} multisets"
                )
            new_miss = tuple(m * (1 - x) for m, x in zip(miss, entry.allocation))
            utility = (
                bundle_value
                - sum((a * b for a, b in zip(v, new_miss)), Fraction(0))
                - new_payment
            )
            chosen.append(pos)
            if utility > best_utility or (
                utility == best_utility and new_payment > best_payment
            ):
                best_utility, best_payment = utility, new_payment
                best_ranks = list(chosen)
                best_miss = new_miss
            if len(chosen) < k:
                visit(pos + 1 if entry.is_deterministic else pos, new_miss, new_payment)
            chosen.pop()

    visit(0, (Fraction(1),) * n, Fraction(0))
    logger.debug(f"Best response enumerated {n_visited} multisets")

    return BestResponse(
        multiset=tuple(sorted(candidates[pos] for pos in best_ranks)),
        utility=best_utility,
        payment=best_payment,
        lot=tuple(1 - m for m in best_miss),
    )


def as_types(types: TypesLike, n: int) -> List[ValuationType]:
    """Support of a distribution, or the given valuations as exact vectors.

    :raises DimensionMismatchError: if a distribution is not over ``n`` items
    """
    if isinstance(types, DiscreteDistribution):
        if types.n != n:
            raise DimensionMismatchError(
                f"Distribution over {types.n} items for a menu over {n} items"
            )
        return types.types
    return [as_vector(v) for v in types]


def _best_responses_chunk(
    types: Sequence[ValuationType], *, menu: Menu, k: int, config: EnumerationConfig
) -> List[BestResponse]:
    return [best_response(v, menu, k, config=config) for v in types]


def _concatenate(results: List[List[BestResponse]]) -> List[BestResponse]:
    return list(chain.from_iterable(results))


def best_responses(
    types: TypesLike,
    menu: Menu,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
    parallel_config: ParallelConfig = ParallelConfig(),
    n_jobs: int = 1,
) -> List[BestResponse]:
    """Best responses of several types, in input order.

    :param types: valuations, or a distribution whose support is used
    :param menu: the menu on offer
    :param k: maximal number of entries bought
    :param config: enumeration caps
    :param parallel_config: backend used to split the types over jobs
    :param n_jobs: number of parallel jobs
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    vectors = as_types(types, menu.n)
    if not vectors:
        return []
    job: MapReduceJob[Sequence[ValuationType], List[BestResponse]] = MapReduceJob(
        vectors,
        map_func=_best_responses_chunk,
        reduce_func=_concatenate,
        map_kwargs=dict(menu=menu, k=k, config=config),
        config=parallel_config,
        n_jobs=n_jobs,
    )
    return job()
