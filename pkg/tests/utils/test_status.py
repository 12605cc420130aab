from pybuyk.utils import SolverStatus

O, I, U = SolverStatus.Optimal, SolverStatus.Infeasible, SolverStatus.Unbounded


def test_and_status():
    """The result of &-ing two solver statuses is the first non-optimal one:

        |   | O | I | U |
        |---|---|---|---|
        | O | O | I | U |
        | I | I | I | I |
        | U | U | U | U |

    where O = Optimal, I = Infeasible, U = Unbounded.
    """
    assert O & O == O
    assert O & I == I
    assert O & U == U
    assert I & O == I
    assert I & I == I
    assert I & U == I
    assert U & O == U
    assert U & I == U
    assert U & U == U


def test_bool_status():
    assert bool(O)
    assert not bool(I)
    assert not bool(U)
