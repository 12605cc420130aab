from fractions import Fraction

from pybuyk.buyer.best_response import best_responses
from pybuyk.core.types import DiscreteDistribution, Menu
from pybuyk.utils.config import EnumerationConfig, ParallelConfig

__all__ = ["revenue_under_buyk"]


def revenue_under_buyk(
    dist: DiscreteDistribution,
    menu: Menu,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
    parallel_config: ParallelConfig = ParallelConfig(),
    n_jobs: int = 1,
) -> Fraction:
    """Expected payment when every type in the support of ``dist`` buys its
    buy-k best response from ``menu``. The menu need not be buy-k IC. The
    residual mass on the zero valuation pays nothing.

    :param dist: distribution of valuations
    :param menu: the menu on offer
    :param k: maximal number of entries a buyer may purchase
    :param config: enumeration caps
    :param parallel_config: backend for the per-type best responses
    :param n_jobs: number of parallel jobs
    :return: the exact expected revenue
    """
    responses = best_responses(
        dist, menu, k, config=config, parallel_config=parallel_config, n_jobs=n_jobs
    )
    return sum(
        (p * r.payment for p, r in zip(dist.probabilities, responses)), Fraction(0)
    )
