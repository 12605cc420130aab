r"""
Distributions on which buy-k IC menus beat bundling by a large factor.

Given sequences :math:`(X, Q)` of 0/1 vectors in which every normalized gap
:math:`g_i` is at least :math:`1/n`, the instance places probability
:math:`1/C_i` on the valuation :math:`C_i x_i`, with :math:`C_i =
(n+1)^{2i}`, and offers :math:`q_i` at price :math:`C_i g_i`. The scales grow
so fast that type :math:`i` only cares about entries up to :math:`i`, the
menu is buy-k IC, and its revenue is exactly the sum of normalized gaps. At
the same time bundling earns at most :math:`2n`.

Starting from the indicator vectors of a k-cover-free family :math:`F`, every
normalized gap is at least :math:`1/n`, so that the ratio between the menu's
revenue and bundling is at least :math:`|F| / (2n^2)`.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Literal, Optional, Tuple

from pybuyk.benchmarks.posted import brev
from pybuyk.buyer.ic import verify_buyk_ic
from pybuyk.buyer.revenue import revenue_under_buyk
from pybuyk.constructions.coverfree import (
    CoverFreeFamily,
    greedy_coverfree,
    kautz_singleton,
)
from pybuyk.core.types import DiscreteDistribution, Menu, MenuEntry, is_binary
from pybuyk.menugap.gap import menugap
from pybuyk.menugap.sequences import SequencePair
from pybuyk.utils.config import EnumerationConfig
from pybuyk.utils.errors import PostconditionError, PreconditionError

__all__ = [
    "LowerBoundReport",
    "LowerBoundInstance",
    "sequences_to_instance",
    "lowerbound_instance",
]

logger = logging.getLogger(__name__)

LowerBoundMethod = Literal["greedy", "kautz_singleton"]


@dataclass(frozen=True)
class LowerBoundReport:
    """Exact figures of a lower-bound instance.

    :param buyk_revenue: revenue of the menu under buy-k behaviour
    :param brev: optimal bundling revenue
    :param menugap: sum of normalized gaps of the sequences
    :param tail_masses: probability of the types ``i, ..., N`` for every
        ``i``, i.e. the mass of the buyers reached by a bundle price of
        ``C_i``
    :param family_size: number of sets of the cover-free family, if any
    """

    n: int
    k: int
    buyk_revenue: Fraction
    brev: Fraction
    menugap: Fraction
    tail_masses: Tuple[Fraction, ...]
    family_size: Optional[int] = None

    @property
    def ratio(self) -> Fraction:
        return self.buyk_revenue / self.brev if self.brev else Fraction(0)

    @property
    def ratio_bound(self) -> Optional[Fraction]:
        """``|F| / (2n^2)``, guaranteed for instances built from a family."""
        if self.family_size is None:
            return None
        return Fraction(self.family_size, 2 * self.n**2)

    @property
    def menugap_bound(self) -> Optional[Fraction]:
        """``|F| / n``, guaranteed for instances built from a family."""
        if self.family_size is None:
            return None
        return Fraction(self.family_size, self.n)

    @property
    def holds(self) -> bool:
        ok = self.brev <= 2 * self.n and self.buyk_revenue == self.menugap
        if self.family_size is not None:
            assert self.ratio_bound is not None and self.menugap_bound is not None
            ok = ok and self.ratio >= self.ratio_bound
            ok = ok and self.menugap >= self.menugap_bound
        return ok


@dataclass(frozen=True)
class LowerBoundInstance:
    """A distribution and a buy-k IC menu with a verified revenue report.

    :param dist: the distribution, residual mass on the zero valuation
    :param menu: deterministic menu, entry ``i`` selling ``q_i``
    :param sequences: the sequences the instance was built from
    :param k: number of entries a buyer may combine
    :param report: exact figures
    :param family: cover-free family behind the sequences, if any
    """

    dist: DiscreteDistribution
    menu: Menu
    sequences: SequencePair
    k: int
    report: LowerBoundReport
    family: Optional[CoverFreeFamily] = None


def sequences_to_instance(
    pair: SequencePair,
    k: int,
    *,
    family: Optional[CoverFreeFamily] = None,
    config: EnumerationConfig = EnumerationConfig(),
) -> LowerBoundInstance:
    """Builds a distribution and a buy-k IC menu whose revenue equals the sum
    of normalized gaps of the sequences.

    Type ``i`` is ``C_i x_i`` with probability ``1 / C_i``, where ``C_i =
    (n+1)^(2i)``; entry ``i`` sells ``q_i`` at ``C_i g_i``, with ``g_i`` the
    normalized gap. The menu's buy-k IC, the revenue identity and ``BRev <=
    2n`` are verified before returning.

    :param pair: sequences of 0/1 vectors
    :param k: number of entries a buyer may combine
    :param family: cover-free family the sequences come from, for the report
    :param config: enumeration caps
    :raises PreconditionError: if a vector is not 0/1 or some normalized gap
        is below ``1/n``
    :raises PostconditionError: if a verified property fails
    """
    n = pair.n
    if not all(is_binary(v) for v in pair.X + pair.Q):
        raise PreconditionError("Sequences must consist of 0/1 vectors")
    report = menugap(pair, k, config=config)
    for entry in report.entries:
        if entry.normalized < Fraction(1, n):
            raise PreconditionError(
                f"Normalized gap {entry.normalized} at index {entry.index} "
                f"is below 1/{n}"
            )

    scales = [(n + 1) ** (2 * i) for i in range(1, len(pair) + 1)]
    dist = DiscreteDistribution(
        n,
        tuple(
            (tuple(c * a for a in x), Fraction(1, c)) for c, x in zip(scales, pair.X)
        ),
    )
    menu = Menu(
        n,
        tuple(
            MenuEntry(c * e.normalized, pair.q(e.index))
            for c, e in zip(scales, report.entries)
        ),
    )
    tails = tuple(
        sum((Fraction(1, c) for c in scales[i:]), Fraction(0))
        for i in range(len(scales))
    )

    if not (verdict := verify_buyk_ic(menu, dist, k, config=config)):
        raise PostconditionError(f"Menu is not buy-{k} IC", verdict.witnesses)
    summary = LowerBoundReport(
        n=n,
        k=k,
        buyk_revenue=revenue_under_buyk(dist, menu, k, config=config),
        brev=brev(dist).value,
        menugap=report.total,
        tail_masses=tails,
        family_size=None if family is None else len(family),
    )
    if summary.buyk_revenue != summary.menugap:
        raise PostconditionError(
            f"Revenue {summary.buyk_revenue} differs from the sum of "
            f"normalized gaps {summary.menugap}",
            summary,
        )
    if summary.brev > 2 * n:
        raise PostconditionError(f"Bundling revenue {summary.brev} exceeds 2n", summary)
    logger.info(
        f"Lower bound instance n={n}, k={k}: revenue {summary.buyk_revenue}, "
        f"BRev {summary.brev}"
    )
    return LowerBoundInstance(dist, menu, pair, k, summary, family)


def _default_field(n: int) -> int:
    q = isqrt(n)
    if q < 2:
        raise PreconditionError(f"No Kautz-Singleton field fits {n} items")
    return q


def lowerbound_instance(
    n: int,
    k: int,
    method: LowerBoundMethod = "greedy",
    *,
    q: Optional[int] = None,
    m: Optional[int] = None,
    config: EnumerationConfig = EnumerationConfig(),
) -> LowerBoundInstance:
    """Lower-bound instance from a k-cover-free family over ``n`` items.

    The family's indicator vectors serve both as valuations and as
    allocations. With ``method="kautz_singleton"`` the field order ``q``
    defaults to ``isqrt(n)`` and ``m`` to 2; the ground set of ``q**2``
    elements must fit in ``n`` items, and remaining items are never
    allocated.

    :param n: number of items
    :param k: number of entries a buyer may combine
    :param method: ``"greedy"`` or ``"kautz_singleton"``
    :param q: field order for Kautz–Singleton
    :param m: number of polynomial coefficients for Kautz–Singleton
    :param config: enumeration caps
    :raises PreconditionError: if the family does not fit or certifies a
        smaller ``k``
    """
    if method == "greedy":
        family = greedy_coverfree(n, k, config=config)
    elif method == "kautz_singleton":
        q = _default_field(n) if q is None else q
        m = 2 if m is None else m
        if q * q > n:
            raise PreconditionError(f"Ground set of size {q * q} exceeds {n} items")
        family = kautz_singleton(q, m, config=config)
    else:
        raise ValueError(f"Unknown construction method '{method}'")
    if family.k < k:
        raise PreconditionError(
            f"Family certifies {family.k}-cover-freeness, {k} was requested"
        )

    padding = (0,) * (n - family.ground_size)
    vectors = [v + padding for v in family.indicators()]
    pair = SequencePair.from_pairs(n, vectors, vectors)
    instance = sequences_to_instance(pair, k, family=family, config=config)
    if not instance.report.holds:
        raise PostconditionError("Lower bound report fails", instance.report)
    return instance
