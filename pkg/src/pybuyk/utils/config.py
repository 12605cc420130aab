from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

__all__ = ["ParallelConfig", "EnumerationConfig", "PipelineConfig"]


@dataclass
class ParallelConfig:
    """Configuration for parallel computation backend.

    :param backend: Type of backend to use. Either 'sequential' or 'joblib'.
    :param n_local_workers: Number of workers (CPUs) to use with joblib. ``None``
        lets joblib decide.
    :param joblib_backend: Name of the joblib backend, e.g. 'loky' or
        'threading'.
    """

    backend: Literal["sequential", "joblib"] = "sequential"
    n_local_workers: Optional[int] = None
    joblib_backend: str = "loky"


@dataclass
class EnumerationConfig:
    """Caps for the exhaustive searches in the library. Every exact computation
    here is exponential in some parameter, so each one is gated by a cap that
    raises :class:`~pybuyk.utils.errors.BudgetExceededError` when exceeded.

    :param max_adaptive_items: Largest number of items for which the adaptive
        buyer's dynamic program over won-item sets is attempted.
    :param max_multisets: Largest number of multisets enumerated for a single
        best response or a single gap.
    :param max_coverfree_ground: Largest ground set for the exhaustive
        cover-free constructions (greedy and maximum).
    :param max_coverfree_tuples: Largest number of tuples checked when
        verifying a family by brute force. Also bounds the number of search
        nodes of :func:`~pybuyk.constructions.coverfree.maximum_coverfree`.
    :param max_lp_variables: Largest number of variables of the buy-one linear
        program.
    """

    max_adaptive_items: int = 12
    max_multisets: int = 2_000_000
    max_coverfree_ground: int = 12
    max_coverfree_tuples: int = 5_000_000
    max_lp_variables: int = 2_000


@dataclass
class PipelineConfig:
    """Constants of the menu surgery that turns a buy-k IC menu into sequences.

    :param c: Minimum price kept by the price filter. ``None`` means one
        hundredth of the buy-k revenue of the input menu.
    :param delta: Slack allowed in the norm of bin representatives.
    :param base: Base of the geometric price bands. ``None`` means ``k + 1``.
    """

    c: Optional[Fraction] = None
    delta: Fraction = Fraction(0)
    base: Optional[int] = None
