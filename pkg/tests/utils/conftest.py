import pytest

from pybuyk.utils.config import ParallelConfig


@pytest.fixture(scope="module", params=["sequential", "joblib"])
def parallel_config(request):
    if request.param == "sequential":
        yield ParallelConfig(backend=request.param)
    else:
        # No process start-up for these short jobs
        yield ParallelConfig(backend="joblib", joblib_backend="threading")
