from enum import Enum

__all__ = ["SolverStatus"]


class SolverStatus(Enum):
    """Outcome of a linear program.

    Statuses can be combined with bitwise and (``&``) to obtain the status of a
    sequence of solves, e.g. the two phases of the simplex method. The
    combination is the first non-optimal status:

    +---+---+---+---+
    |   | O | I | U |
    +===+===+===+===+
    | O | O | I | U |
    +---+---+---+---+
    | I | I | I | I |
    +---+---+---+---+
    | U | U | U | U |
    +---+---+---+---+

    where O = Optimal, I = Infeasible, U = Unbounded.

    :Boolean casting:

    A SolverStatus evaluates to ``True`` iff it's ``Optimal``:

        bool(SolverStatus.Optimal) == True
        bool(SolverStatus.Infeasible) == False
    """

    Optimal = "optimal"
    Infeasible = "infeasible"
    Unbounded = "unbounded"

    def __and__(self, other: "SolverStatus") -> "SolverStatus":
        # Careful, the order of tests matters here!
        if self != SolverStatus.Optimal:
            return self
        return other

    def __bool__(self) -> bool:
        return self == SolverStatus.Optimal
