import os
from fractions import Fraction
from typing import Tuple

import numpy as np
import pytest

from pybuyk.constructions.instances import coffee_shop_instance
from pybuyk.core.types import DiscreteDistribution, Menu


def pytest_addoption(parser):
    parser.addoption(
        "--n-random",
        type=int,
        default=None,
        help="Override the number of random instances of the property suites",
    )


@pytest.fixture()
def seed(request):
    try:
        return request.param
    except AttributeError:
        return 24


@pytest.fixture()
def rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


@pytest.fixture(autouse=True)
def seed_numpy(seed=42):
    np.random.seed(seed)


@pytest.fixture
def n_random(request):
    """Number of random instances of a property suite: the value given with
    ``--n-random`` or the default passed as ``request.param``."""
    override = request.config.getoption("--n-random")
    if override is not None:
        return override
    return getattr(request, "param", 100)


@pytest.fixture(scope="session")
def num_workers():
    # Run with 2 CPUs inside GitHub actions
    if os.getenv("CI"):
        return 2
    # And a maximum of 4 CPUs locally
    return max(1, min((os.cpu_count() or 1) - 1, 4))


@pytest.fixture
def n_jobs(num_workers):
    return num_workers


@pytest.fixture
def coffee() -> Tuple[DiscreteDistribution, Menu]:
    return coffee_shop_instance()


def F(x) -> Fraction:
    """Shorthand for exact literals in tests: ``F("1/3")``."""
    return Fraction(x)
