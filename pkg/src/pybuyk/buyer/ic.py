import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from pybuyk.buyer.best_response import TypesLike, as_types, best_responses
from pybuyk.core.types import EntryMultiset, Menu, ValuationType
from pybuyk.utils.config import EnumerationConfig, ParallelConfig

__all__ = ["ICWitness", "ICVerdict", "verify_buyk_ic"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ICWitness:
    """A type that strictly gains by deviating from single-entry purchases.

    :param valuation: the deviating type
    :param multiset: the profitable purchase, or ``None`` for an adaptive
        strategy, which is a decision tree rather than a multiset
    :param single_utility: best utility from a single entry
    :param multiset_utility: utility of the deviation
    :param payment: total price of the deviation, ``None`` for adaptive
        strategies
    """

    valuation: ValuationType
    multiset: Optional[EntryMultiset]
    single_utility: Fraction
    multiset_utility: Fraction
    payment: Optional[Fraction] = None


@dataclass(frozen=True)
class ICVerdict:
    """Outcome of an IC check. Truthy iff the menu is IC for all types tested.

    :param ic: whether no type profits from deviating
    :param witnesses: one entry per profitable deviation
    """

    ic: bool
    witnesses: Tuple[ICWitness, ...] = ()

    def __bool__(self) -> bool:
        return self.ic


def verify_buyk_ic(
    menu: Menu,
    types: TypesLike,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
    parallel_config: ParallelConfig = ParallelConfig(),
    n_jobs: int = 1,
) -> ICVerdict:
    """Checks buy-k incentive compatibility of a menu on a set of types.

    For every type the best utility over single entries is compared with the
    best utility over multisets of at most ``k`` entries. The menu is IC iff
    the former is never strictly smaller (weak preference suffices).

    :param menu: the menu to check
    :param types: valuations, or a distribution whose support is used
    :param k: number of entries a buyer may combine
    :param config: enumeration caps
    :param parallel_config: backend for the per-type best responses
    :param n_jobs: number of parallel jobs
    :return: the verdict with a witness per deviating type
    """
    vectors = as_types(types, menu.n)
    kwargs = dict(config=config, parallel_config=parallel_config, n_jobs=n_jobs)
    singles = best_responses(vectors, menu, 1, **kwargs)  # type: ignore
    if k == 1:
        multis = singles
    else:
        multis = best_responses(vectors, menu, k, **kwargs)  # type: ignore
    witnesses = tuple(
        ICWitness(
            valuation=v,
            multiset=m.multiset,
            single_utility=s.utility,
            multiset_utility=m.utility,
            payment=m.payment,
        )
        for v, s, m in zip(vectors, singles, multis)
        if m.utility > s.utility
    )
    if witnesses:
        logger.info(f"Menu is not buy-{k} IC: {len(witnesses)} deviating types")
    return ICVerdict(ic=not witnesses, witnesses=witnesses)
