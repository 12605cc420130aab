from dataclasses import dataclass
from fractions import Fraction

from pybuyk.benchmarks.posted import brev
from pybuyk.buyer.revenue import revenue_under_buyk
from pybuyk.core.types import DiscreteDistribution, Menu
from pybuyk.utils.config import EnumerationConfig

__all__ = ["MenuSizeCheck", "menu_size_revenue_bound"]


@dataclass(frozen=True)
class MenuSizeCheck:
    """Comparison of a menu's revenue with ``|menu| * BRev``. The bound is a
    theorem for buy-one buyers; for ``k > 1`` it is only reported."""

    revenue: Fraction
    menu_size: int
    brev: Fraction
    k: int

    @property
    def bound(self) -> Fraction:
        return self.menu_size * self.brev

    @property
    def holds(self) -> bool:
        return self.bound >= self.revenue


def menu_size_revenue_bound(
    dist: DiscreteDistribution,
    menu: Menu,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
) -> MenuSizeCheck:
    """Checks that bundling recovers a ``1/|menu|`` fraction of the revenue of
    a menu: each entry ``e`` earns at most ``p_e Pr(e is bought)``, and every
    buyer of ``e`` values the grand bundle at least at ``p_e``.

    :param dist: the distribution
    :param menu: any menu, IC or not
    :param k: number of entries a buyer may combine
    :param config: enumeration caps
    """
    return MenuSizeCheck(
        revenue=revenue_under_buyk(dist, menu, k, config=config),
        menu_size=len(menu),
        brev=brev(dist).value,
        k=k,
    )
