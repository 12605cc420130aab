from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from pybuyk.core.types import Vector, zero_vector
from pybuyk.core.validation import ValidationReport, validate
from pybuyk.utils.errors import DimensionMismatchError, PreconditionError
from pybuyk.utils.numeric import RationalLike, as_vector

__all__ = ["SequencePair", "standard_basis_sequences"]


@dataclass(frozen=True)
class SequencePair:
    """Paired sequences of valuations ``x_1..x_N`` and allocations
    ``q_0..q_N`` with ``q_0 = 0``, the domain of the gap measures.

    Indices are 1-based as in the gap definitions: ``x(i)`` and ``q(i)`` for
    ``i = 1..N``, and ``q(0)`` is the zero vector.

    :param n: dimension
    :param X: valuations, ``N`` vectors
    :param Q: allocations, ``N + 1`` vectors starting with the zero vector
    :raises DimensionMismatchError: if lengths or dimensions disagree
    :raises PreconditionError: if some valuation is the zero vector
    """

    n: int
    X: Tuple[Vector, ...]
    Q: Tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(as_vector(x) for x in self.X))
        object.__setattr__(self, "Q", tuple(as_vector(q) for q in self.Q))
        if len(self.Q) != len(self.X) + 1:
            raise DimensionMismatchError(
                f"{len(self.X)} valuations need {len(self.X) + 1} allocations, "
                f"got {len(self.Q)}"
            )
        for v in self.X + self.Q:
            if len(v) != self.n:
                raise DimensionMismatchError(
                    f"Vector of length {len(v)} in sequences of dimension {self.n}"
                )
        for i, x in enumerate(self.X, start=1):
            if not any(x):
                raise PreconditionError(f"Valuation x_{i} is the zero vector")

    @classmethod
    def from_pairs(
        cls,
        n: int,
        X: Iterable[Iterable[RationalLike]],
        Q: Iterable[Iterable[RationalLike]],
    ) -> "SequencePair":
        """Builds the pair from valuations and allocations ``q_1..q_N``; the
        zero allocation ``q_0`` is prepended."""
        X = tuple(as_vector(x) for x in X)
        Q = (zero_vector(n),) + tuple(as_vector(q) for q in Q)
        return cls(n, X, Q)

    def __len__(self) -> int:
        return len(self.X)

    def x(self, i: int) -> Vector:
        if not 1 <= i <= len(self):
            raise IndexError(f"Valuation index {i} out of range 1..{len(self)}")
        return self.X[i - 1]

    def q(self, i: int) -> Vector:
        if not 0 <= i <= len(self):
            raise IndexError(f"Allocation index {i} out of range 0..{len(self)}")
        return self.Q[i]

    def restrict(self, indices: Sequence[int]) -> "SequencePair":
        """Sub-sequences keeping the pairs ``(x_i, q_i)`` at the given 1-based
        indices, in the order given."""
        return SequencePair(
            self.n,
            tuple(self.x(i) for i in indices),
            (self.Q[0],) + tuple(self.q(i) for i in indices),
        )


def standard_basis_sequences(n: int) -> SequencePair:
    """``X = Q = (e_1, ..., e_n)``, on which the gap measure with ``k = n``
    equals ``n``."""
    basis = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return SequencePair.from_pairs(n, basis, basis)


@validate.register
def _(pair: SequencePair) -> ValidationReport:
    report = ValidationReport()
    if any(x != 0 for x in pair.Q[0]):
        report.add("Q[0]", "first allocation must be the zero vector")
    for i, x in enumerate(pair.X):
        for j, a in enumerate(x):
            if a < 0:
                report.add(f"X[{i}][{j}]", "negative value")
    for i, q in enumerate(pair.Q):
        for j, a in enumerate(q):
            if not 0 <= a <= 1:
                report.add(f"Q[{i}][{j}]", "coordinate out of [0,1]")
    return report
