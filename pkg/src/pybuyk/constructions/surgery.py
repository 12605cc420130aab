r"""
Menu surgery: from a buy-k IC menu to a pair of sequences with large gap.

The pipeline run by :func:`upper_bound_pipeline` is

1. Compute the revenue :math:`R` of the menu under buy-k behaviour.
2. Drop every entry priced below :math:`c` (by default :math:`R/100`). This
   loses at most :math:`c`.
3. Split the remaining entries into geometric price bands
   :math:`[c \cdot b^t, c \cdot b^{t+1})` with base :math:`b = k + 1` and keep
   the better of the even and the odd bands, losing at most half.
4. In each band, pick among the types buying there the one with the smallest
   :math:`\ell_1` norm, and pair it with the allocation it buys. The result is
   a :class:`~pybuyk.menugap.sequences.SequencePair`.

For finite distributions the resulting sequences satisfy

.. math::

    \mathrm{MenuGap}_k(X, Q) \ge
        \frac{R - c}{2 (k+1)^2 \, \mathrm{BRev} \, (1 + \delta)},

which :class:`PipelineTrace` checks exactly.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pybuyk.benchmarks.posted import brev
from pybuyk.buyer.best_response import best_responses
from pybuyk.buyer.ic import verify_buyk_ic
from pybuyk.buyer.revenue import revenue_under_buyk
from pybuyk.core.types import (
    AllocationVector,
    DiscreteDistribution,
    Menu,
    ValuationType,
    zero_vector,
)
from pybuyk.menugap.gap import menugap
from pybuyk.menugap.sequences import SequencePair
from pybuyk.utils.config import EnumerationConfig, PipelineConfig
from pybuyk.utils.errors import PreconditionError
from pybuyk.utils.numeric import RationalLike, as_rational, l1_norm

__all__ = [
    "BinRecord",
    "PipelineStage",
    "PipelineTrace",
    "filter_min_price",
    "band_index",
    "band_split",
    "extract_sequences",
    "upper_bound_pipeline",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinRecord:
    """One price band with at least one buyer.

    :param band: index ``t`` of the band ``[c b^t, c b^{t+1})``
    :param mass: probability of the types attributed to the band
    :param min_price: lowest price among the entries bought in the band
    :param representative: attributed type of smallest norm
    :param allocation: allocation of the entry the representative buys
    :param bound: ``BRev (1 + delta) / norm``. Selling the grand bundle at
        the representative's norm reaches every attributed type, so the mass
        never exceeds it.
    """

    band: int
    mass: Fraction
    min_price: Fraction
    representative: ValuationType
    allocation: AllocationVector
    norm: Fraction
    bound: Fraction

    @property
    def holds(self) -> bool:
        return self.mass <= self.bound


@dataclass(frozen=True)
class PipelineStage:
    """A step of the surgery and its value: the buy-k revenue of ``menu``, or
    the sum of normalized gaps of ``sequences``."""

    name: str
    value: Fraction
    menu: Optional[Menu] = None
    sequences: Optional[SequencePair] = None

    def evaluate(
        self,
        dist: DiscreteDistribution,
        k: int,
        *,
        config: EnumerationConfig = EnumerationConfig(),
    ) -> Fraction:
        """Recomputes the value of the stage from scratch."""
        if self.sequences is not None:
            return menugap(self.sequences, k, config=config).total
        assert self.menu is not None
        return revenue_under_buyk(dist, self.menu, k, config=config)


@dataclass(frozen=True)
class PipelineTrace:
    """Record of a run of the surgery.

    :param k: number of entries a buyer may combine
    :param c: price threshold
    :param delta: slack in the norm of representatives
    :param base: base of the price bands
    :param brev: optimal bundling revenue of the distribution
    :param stages: the steps, in order of execution
    :param bins: the non-empty bands of the selected half, in increasing
        order
    :param ic: buy-k IC verdict of the input menu, when it was checked
    """

    k: int
    c: Fraction
    delta: Fraction
    base: int
    brev: Fraction
    stages: Tuple[PipelineStage, ...]
    bins: Tuple[BinRecord, ...] = ()
    ic: Optional[bool] = None

    def stage(self, name: str) -> PipelineStage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(f"No stage '{name}' in trace")

    @property
    def sequences(self) -> SequencePair:
        sequences = self.stage("sequences").sequences
        assert sequences is not None
        return sequences

    @property
    def menugap(self) -> Fraction:
        return self.stage("sequences").value

    @property
    def revenue(self) -> Fraction:
        """Buy-k revenue of the input menu."""
        return self.stage("input").value

    @property
    def bound(self) -> Optional[Fraction]:
        """Guaranteed lower bound on the sum of normalized gaps, ``None`` when
        the trace does not start from an input menu."""
        if all(s.name != "input" for s in self.stages):
            return None
        if self.brev == 0:
            return Fraction(0)
        denominator = 2 * (self.k + 1) ** 2 * self.brev * (1 + self.delta)
        return (self.revenue - self.c) / denominator

    @property
    def holds(self) -> bool:
        bound = self.bound
        gap_ok = bound is None or self.menugap >= bound
        return gap_ok and all(b.holds for b in self.bins)


def filter_min_price(menu: Menu, c: RationalLike) -> Menu:
    """Sub-menu of the entries priced at least ``c``, in their original
    order."""
    c = as_rational(c)
    return Menu(menu.n, tuple(e for e in menu if e.price >= c))


def _check_band_parameters(c: Fraction, base: int):
    if c <= 0:
        raise ValueError(f"The price threshold must be positive, got {c}")
    if not isinstance(base, int) or base < 2:
        raise ValueError(f"The band base must be an integer >= 2, got {base}")


def band_index(price: RationalLike, c: RationalLike, base: int) -> int:
    """Largest ``t`` with ``c * base**t <= price``. Bands are closed on the
    left.

    >>> band_index(6, 2, 3)
    1

    :raises PreconditionError: if ``price < c``
    """
    price, c = as_rational(price), as_rational(c)
    _check_band_parameters(c, base)
    if price < c:
        raise PreconditionError(f"Price {price} is below the threshold {c}")
    t, upper = 0, c * base
    while upper <= price:
        t += 1
        upper *= base
    return t


def band_split(menu: Menu, c: RationalLike, base: int) -> Tuple[Menu, Menu]:
    """Splits a menu into its entries in even and in odd price bands.

    :param menu: a menu with every price at least ``c``
    :param c: positive price threshold, the left end of band 0
    :param base: ratio between consecutive band ends
    :return: the even-band and the odd-band sub-menus, each in original order
    :raises PreconditionError: if some entry is priced below ``c``
    """
    c = as_rational(c)
    even, odd = [], []
    for entry in menu:
        (odd if band_index(entry.price, c, base) % 2 else even).append(entry)
    return Menu(menu.n, tuple(even)), Menu(menu.n, tuple(odd))


def extract_sequences(
    dist: DiscreteDistribution,
    menu: Menu,
    k: int,
    c: RationalLike,
    delta: RationalLike = 0,
    *,
    base: Optional[int] = None,
    config: EnumerationConfig = EnumerationConfig(),
) -> Tuple[SequencePair, PipelineTrace]:
    """Turns a banded menu into sequences of representatives.

    Every support type is attributed to the band of the most expensive entry
    in its buy-k best response; types buying nothing are ignored. In each band
    the attributed type of minimal :math:`\\ell_1` norm (earliest in the
    support on ties) becomes the valuation :math:`x_j`, and the allocation of
    the entry it is attributed through becomes :math:`q_j`.

    :param dist: the distribution
    :param menu: entries priced at least ``c``, usually one half of
        :func:`band_split`
    :param k: number of entries a buyer may combine
    :param c: price threshold of the bands
    :param delta: slack of the per-band probability bound
    :param base: band base, ``k + 1`` by default
    :param config: enumeration caps
    :return: the sequences in increasing band order and a trace with one
        record per non-empty band
    :raises PreconditionError: if a type buys an entry priced below ``c``
    """
    c, delta = as_rational(c), as_rational(delta)
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    base = k + 1 if base is None else base
    _check_band_parameters(c, base)
    brev_value = brev(dist).value

    responses = best_responses(dist, menu, k, config=config)
    attributed: Dict[int, List[Tuple[ValuationType, Fraction, int]]] = defaultdict(
        list
    )
    rank = {index: pos for pos, index in enumerate(menu.canonical_order)}
    for (v, p), response in zip(dist, responses):
        if not response.multiset:
            continue
        top = max(response.multiset, key=rank.__getitem__)
        price = menu.entry(top).price
        if price < c:
            raise PreconditionError(
                f"Type {v} buys an entry priced {price} below the threshold {c}"
            )
        attributed[band_index(price, c, base)].append((v, p, top))

    bins: List[BinRecord] = []
    for band in sorted(attributed):
        members = attributed[band]
        v, _, top = min(members, key=lambda m: l1_norm(m[0]))
        norm = l1_norm(v)
        bins.append(
            BinRecord(
                band=band,
                mass=sum((p for _, p, _ in members), Fraction(0)),
                min_price=min(menu.entry(i).price for _, _, i in members),
                representative=v,
                allocation=menu.entry(top).allocation,
                norm=norm,
                bound=brev_value * (1 + delta) / norm if norm else Fraction(0),
            )
        )
        logger.debug(f"Band {band}: {len(members)} types, representative {v}")

    pair = SequencePair(
        menu.n,
        tuple(b.representative for b in bins),
        (zero_vector(menu.n),) + tuple(b.allocation for b in bins),
    )
    value = menugap(pair, k, config=config).total
    trace = PipelineTrace(
        k=k,
        c=c,
        delta=delta,
        base=base,
        brev=brev_value,
        stages=(PipelineStage("sequences", value, sequences=pair),),
        bins=tuple(bins),
    )
    return pair, trace


def upper_bound_pipeline(
    dist: DiscreteDistribution,
    menu: Menu,
    k: int,
    *,
    pipeline: PipelineConfig = PipelineConfig(),
    config: EnumerationConfig = EnumerationConfig(),
) -> PipelineTrace:
    """Runs the full surgery on a menu and records every stage.

    The inequality checked by :attr:`PipelineTrace.holds` is guaranteed when
    the input menu is buy-k IC. The verdict is recorded in the trace and a
    warning is logged otherwise.

    :param dist: the distribution
    :param menu: the input menu
    :param k: number of entries a buyer may combine
    :param pipeline: threshold, slack and band base
    :param config: enumeration caps
    :return: the trace with stages ``input``, ``filter``, ``even``, ``odd``,
        ``selected`` and ``sequences``
    """
    revenue = revenue_under_buyk(dist, menu, k, config=config)
    ic = verify_buyk_ic(menu, dist, k, config=config).ic
    if not ic:
        logger.warning(f"Input menu is not buy-{k} IC, the bound may fail")
    stages = [PipelineStage("input", revenue, menu=menu)]
    base = k + 1 if pipeline.base is None else pipeline.base
    delta = as_rational(pipeline.delta)

    if revenue == 0:
        empty = SequencePair(menu.n, (), (zero_vector(menu.n),))
        stages.append(PipelineStage("sequences", Fraction(0), sequences=empty))
        return PipelineTrace(
            k, Fraction(0), delta, base, brev(dist).value, tuple(stages), ic=ic
        )

    c = revenue / 100 if pipeline.c is None else as_rational(pipeline.c)
    filtered = filter_min_price(menu, c)
    stages.append(
        PipelineStage(
            "filter", revenue_under_buyk(dist, filtered, k, config=config), filtered
        )
    )
    even, odd = band_split(filtered, c, base)
    even_revenue = revenue_under_buyk(dist, even, k, config=config)
    odd_revenue = revenue_under_buyk(dist, odd, k, config=config)
    stages.append(PipelineStage("even", even_revenue, even))
    stages.append(PipelineStage("odd", odd_revenue, odd))
    selected, selected_revenue = (
        (even, even_revenue) if even_revenue >= odd_revenue else (odd, odd_revenue)
    )
    stages.append(PipelineStage("selected", selected_revenue, selected))
    logger.info(
        f"Surgery at c={c}: revenue {revenue}, filtered {stages[1].value}, "
        f"selected half {selected_revenue}"
    )

    _, extracted = extract_sequences(
        dist, selected, k, c, delta, base=base, config=config
    )
    stages.extend(extracted.stages)
    trace = PipelineTrace(
        k=k,
        c=c,
        delta=delta,
        base=base,
        brev=extracted.brev,
        stages=tuple(stages),
        bins=extracted.bins,
        ic=ic,
    )
    logger.info(f"Sum of normalized gaps {trace.menugap}, guaranteed {trace.bound}")
    return trace
