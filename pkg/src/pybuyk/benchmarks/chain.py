import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from pybuyk.benchmarks.optimal import optimal_buy_one
from pybuyk.benchmarks.posted import brev, srev
from pybuyk.buyer.ic import verify_buyk_ic
from pybuyk.buyer.revenue import revenue_under_buyk
from pybuyk.core.types import DiscreteDistribution, Menu
from pybuyk.utils.config import EnumerationConfig

__all__ = ["RevenueChain", "revenue_chain"]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RevenueChain:
    """Benchmarks of a distribution next to the buy-k revenue of one menu.

    :param opt_buy_one: optimal buy-one revenue
    :param buyk_revenue: revenue of the menu under buy-k behaviour
    :param brev: optimal bundling revenue
    :param srev: optimal item pricing revenue
    :param ic: buy-k' IC verdict of the menu for every ``k' = 1..k``
    """

    opt_buy_one: Fraction
    buyk_revenue: Fraction
    brev: Fraction
    srev: Fraction
    ic: Dict[int, bool]
    k: int

    @property
    def ic_monotone(self) -> bool:
        """IC at some k implies IC at every smaller k."""
        levels = sorted(self.ic)
        return all(self.ic[a] or not self.ic[b] for a, b in zip(levels, levels[1:]))

    @property
    def holds(self) -> bool:
        """The inequalities every instance must satisfy. The buy-k revenue is
        only bounded by the buy-one optimum when the menu is buy-k IC."""
        bounded = not self.ic[self.k] or self.opt_buy_one >= self.buyk_revenue
        return (
            bounded
            and self.buyk_revenue >= 0
            and self.opt_buy_one >= self.brev
            and self.opt_buy_one >= self.srev
            and self.ic_monotone
        )


def revenue_chain(
    dist: DiscreteDistribution,
    menu: Menu,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> RevenueChain:
    """Evaluates the chain ``OptBuy1 >= BuyKRev(M) >= 0``, ``OptBuy1 >= BRev``
    and ``OptBuy1 >= SRev`` for a menu ``M``, together with its IC verdicts for
    ``1..k``. A buy-k IC menu is also buy-one IC, so the optimal buy-one
    mechanism can do no worse than it.

    :param dist: the distribution
    :param menu: the menu to evaluate
    :param k: number of entries a buyer may combine
    :param config: enumeration caps
    """
    chain = RevenueChain(
        opt_buy_one=optimal_buy_one(dist, config=config).value,
        buyk_revenue=revenue_under_buyk(dist, menu, k, config=config),
        brev=brev(dist).value,
        srev=srev(dist).value,
        ic={j: verify_buyk_ic(menu, dist, j, config=config).ic for j in range(1, k + 1)},
        k=k,
    )
    if not chain.holds:
        logger.warning(f"Revenue chain violated: {chain}")
    return chain
