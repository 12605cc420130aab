r"""
Cover-free families of sets.

A family :math:`F` of subsets of :math:`\{1, \dots, n\}` is *k-cover-free*
if no member is contained in the union of :math:`k` others:

.. math::

    A_0 \not\subseteq A_1 \cup \dots \cup A_k
    \quad \text{for all distinct } A_0, A_1, \dots, A_k \in F.

When the family has fewer than :math:`k + 1` members, every member must
escape the union of all the others. The property is hereditary, which the
exhaustive constructions below rely on.

Three constructions are provided: a greedy maximal family in canonical subset
order, an exhaustive maximum family for tiny ground sets, and the algebraic
Kautz–Singleton family built from low-degree polynomials over a prime field.
"""
import logging
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

import galois

from pybuyk.utils.config import EnumerationConfig
from pybuyk.utils.errors import (
    BudgetExceededError,
    PostconditionError,
    PreconditionError,
)
from pybuyk.utils.numeric import powerset
from pybuyk.utils.progress import maybe_progress

__all__ = [
    "CoverFreeFamily",
    "CoverFreeCheck",
    "verify_coverfree",
    "greedy_coverfree",
    "maximum_coverfree",
    "kautz_singleton",
]

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


@dataclass(frozen=True)
class CoverFreeFamily:
    """A family of subsets of ``{1, ..., ground_size}``.

    :param ground_size: size ``n`` of the ground set
    :param sets: members as sorted tuples of 1-based elements
    :param k: cover-free parameter the construction certifies
    """

    ground_size: int
    sets: Tuple[Subset, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(
            self, "sets", tuple(tuple(sorted(set(s))) for s in self.sets)
        )

    def __len__(self) -> int:
        return len(self.sets)

    def indicators(self) -> List[Tuple[int, ...]]:
        """0/1 indicator vector of every member, of length ``ground_size``."""
        return [
            tuple(int(j in s) for j in range(1, self.ground_size + 1))
            for s in self.sets
        ]


@dataclass(frozen=True)
class CoverFreeCheck:
    """Outcome of :func:`verify_coverfree`. Truthy iff the family is
    cover-free.

    :param holds: whether no member is covered
    :param counterexample: a covered member and the members covering it
    """

    holds: bool
    counterexample: Optional[Tuple[Subset, Tuple[Subset, ...]]] = None

    def __bool__(self) -> bool:
        return self.holds


def _mask(s: Iterable[int]) -> int:
    m = 0
    for j in s:
        m |= 1 << j
    return m


def _covered(a: int, others: Iterable[int]) -> bool:
    union = 0
    for b in others:
        union |= b
    return a & ~union == 0


def _n_tuples(m: int, k: int) -> int:
    return m * comb(m - 1, min(k, m - 1)) if m > 0 else 0


def verify_coverfree(
    sets: Sequence[Iterable[int]],
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
    progress: bool = False,
) -> CoverFreeCheck:
    """Checks the k-cover-free property by brute force over all members and
    all choices of ``k`` other members.

    :param sets: the family, as a :class:`CoverFreeFamily` or any sequence of
        sets
    :param k: number of covering members
    :param config: ``max_coverfree_tuples`` caps the number of tuples
    :param progress: whether to display a progress bar
    :return: the verdict, with a violating tuple if there is one
    :raises BudgetExceededError: if there are too many tuples to check
    """
    if isinstance(sets, CoverFreeFamily):
        sets = sets.sets
    members = [tuple(sorted(set(s))) for s in sets]
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    m = len(members)
    if (n_tuples := _n_tuples(m, k)) > config.max_coverfree_tuples:
        raise BudgetExceededError(
            f"Verifying {m} sets for k={k} needs {n_tuples} tuples, "
            f"cap is {config.max_coverfree_tuples}"
        )
    masks = [_mask(s) for s in members]
    size = min(k, m - 1)
    for i in maybe_progress(range(m), progress, desc="Cover-free check"):
        others = [j for j in range(m) if j != i]
        for chosen in combinations(others, size):
            if _covered(masks[i], (masks[j] for j in chosen)):
                return CoverFreeCheck(
                    False, (members[i], tuple(members[j] for j in chosen))
                )
    return CoverFreeCheck(True)


def _can_add(masks: List[int], new: int, k: int) -> bool:
    """Whether ``masks + [new]`` is k-cover-free, given that ``masks`` is."""
    size = min(k, len(masks))
    if size == 0:
        return True
    if any(_covered(new, chosen) for chosen in combinations(masks, size)):
        return False
    for i, a in enumerate(masks):
        rest = masks[:i] + masks[i + 1 :]
        for chosen in combinations(rest, size - 1):
            if _covered(a, chosen + (new,)):
                return False
    return True


def _check_ground(n: int, k: int, config: EnumerationConfig):
    if n < 1 or k < 1:
        raise ValueError(f"n and k must be positive, got n={n}, k={k}")
    if n > config.max_coverfree_ground:
        raise BudgetExceededError(
            f"Exhaustive cover-free construction over {n} elements exceeds the "
            f"cap of {config.max_coverfree_ground}. Use kautz_singleton for "
            f"larger ground sets."
        )


def _verified(family: CoverFreeFamily, config: EnumerationConfig) -> CoverFreeFamily:
    if not (check := verify_coverfree(family, family.k, config=config)):
        raise PostconditionError("Constructed family is not cover-free", check)
    return family


def greedy_coverfree(
    n: int,
    k: int,
    *,
    config: EnumerationConfig = EnumerationConfig(),
    progress: bool = False,
) -> CoverFreeFamily:
    """Maximal k-cover-free family over ``{1, ..., n}``, built greedily.

    Non-empty subsets are visited by size and then lexicographically, and
    each is kept iff the family stays k-cover-free. The result is maximal
    but in general not maximum.

    >>> greedy_coverfree(3, 1).sets
    ((1,), (2,), (3,))

    :param n: size of the ground set
    :param k: cover-free parameter
    :param config: ``max_coverfree_ground`` caps ``n``
    :param progress: whether to display a progress bar
    :raises BudgetExceededError: if ``n`` is above the cap
    """
    _check_ground(n, k, config)
    chosen: List[Subset] = []
    masks: List[int] = []
    candidates = (s for s in powerset(range(1, n + 1)) if s)
    for s in maybe_progress(candidates, progress, total=2**n - 1, desc="Greedy"):
        mask = _mask(s)
        if _can_add(masks, mask, k):
            chosen.append(s)
            masks.append(mask)
    logger.debug(f"Greedy {k}-cover-free family over {n} elements: {len(chosen)} sets")
    return _verified(CoverFreeFamily(n, tuple(chosen), k), config)


def maximum_coverfree(
    n: int, k: int, *, config: EnumerationConfig = EnumerationConfig()
) -> CoverFreeFamily:
    """Largest k-cover-free family over ``{1, ..., n}``, by branch and bound
    over subsets in canonical order. Among families of maximum size the
    first one found in that order is returned.

    Only practical for very small ground sets: the number of search nodes is
    capped by ``config.max_coverfree_tuples``.

    :raises BudgetExceededError: if ``n`` or the search exceed their caps
    """
    _check_ground(n, k, config)
    candidates = [s for s in powerset(range(1, n + 1)) if s]
    cand_masks = [_mask(s) for s in candidates]
    best: List[int] = []
    current: List[int] = []
    n_nodes = 0

    def search(start: int):
        nonlocal best, n_nodes
        n_nodes += 1
        if n_nodes > config.max_coverfree_tuples:
            raise BudgetExceededError(
                f"Maximum cover-free search over {n} elements exceeds "
                f"{config.max_coverfree_tuples} nodes"
            )
        if len(current) > len(best):
            best = list(current)
        for pos in range(start, len(candidates)):
            if len(current) + len(candidates) - pos <= len(best):
                return
            if _can_add([cand_masks[i] for i in current], cand_masks[pos], k):
                current.append(pos)
                search(pos + 1)
                current.pop()

    search(0)
    logger.debug(f"Maximum search visited {n_nodes} nodes, found {len(best)} sets")
    family = CoverFreeFamily(n, tuple(candidates[i] for i in best), k)
    return _verified(family, config)


def kautz_singleton(
    q: int, m: int, *, config: EnumerationConfig = EnumerationConfig()
) -> CoverFreeFamily:
    """Kautz–Singleton family from polynomials of degree below ``m`` over the
    prime field of order ``q``.

    Every polynomial ``f`` yields the set of points ``(x, f(x))`` of its graph,
    encoded as the element ``x * q + f(x) + 1`` of a ground set of size
    ``q**2``. Two distinct polynomials agree on at most ``m - 1`` points, so a
    member meets the union of ``k`` others in at most ``k (m - 1)`` of its
    ``q`` elements, and the family is k-cover-free whenever ``k (m - 1) < q``.
    The largest such ``k`` is recorded. For ``m = 1`` the sets are disjoint
    and cover-free for any ``k`` below the family size.

    Polynomials are enumerated by their coefficient vectors, highest degree
    first, in lexicographic order.

    :param q: a prime
    :param m: number of coefficients, ``1 <= m <= q``
    :param config: caps for the verification before return
    :return: a family of ``q**m`` sets of size ``q``
    :raises PreconditionError: if ``q`` is not prime or ``m`` is out of range
    :raises BudgetExceededError: if the family has more tuples than
        ``config.max_coverfree_tuples`` allows to verify
    """
    if not galois.is_prime(q):
        raise PreconditionError(f"Field order {q} is not a prime")
    if not 1 <= m <= q:
        raise PreconditionError(f"Number of coefficients must be in 1..{q}, got {m}")

    GF = galois.GF(q)
    points = GF.elements
    sets: List[Subset] = []
    for coeffs in product(range(q), repeat=m):
        poly = galois.Poly(list(coeffs), field=GF)
        values = poly(points)
        sets.append(tuple(int(x) * q + int(y) + 1 for x, y in zip(points, values)))

    k = q**m - 1 if m == 1 else -(-q // (m - 1)) - 1
    logger.debug(f"Kautz-Singleton family q={q}, m={m}: {len(sets)} sets, k={k}")
    return _verified(CoverFreeFamily(q * q, tuple(sets), k), config)
