import operator
from fractions import Fraction
from functools import partial, reduce

import numpy as np
import pytest

from pybuyk.buyer.best_response import best_response
from pybuyk.utils.config import ParallelConfig
from pybuyk.utils.parallel import MapReduceJob, init_parallel_backend
from pybuyk.utils.parallel.backend import effective_n_jobs


def test_effective_n_jobs(parallel_config):
    parallel_backend = init_parallel_backend(parallel_config)
    if parallel_config.backend == "sequential":
        assert parallel_backend.effective_n_jobs(1) == 1
        assert parallel_backend.effective_n_jobs(4) == 1
        assert parallel_backend.effective_n_jobs(-1) == 1
    else:
        assert parallel_backend.effective_n_jobs(1) == 1
        assert parallel_backend.effective_n_jobs(4) == 4
        assert parallel_backend.effective_n_jobs(-1) >= 1

    for n_jobs in [-1, 1, 2]:
        assert parallel_backend.effective_n_jobs(n_jobs) == effective_n_jobs(
            n_jobs, parallel_config
        )
        assert effective_n_jobs(n_jobs, parallel_config) > 0

    with pytest.raises(ValueError):
        parallel_backend.effective_n_jobs(0)


def test_n_local_workers():
    config = ParallelConfig(backend="joblib", n_local_workers=3)
    assert effective_n_jobs(-1, config) == 3


def test_unknown_backend():
    with pytest.raises(NotImplementedError):
        init_parallel_backend(ParallelConfig(backend="spark"))  # type: ignore


def test_backends_have_no_public_constructor():
    backend = init_parallel_backend(ParallelConfig())
    with pytest.raises(TypeError):
        type(backend)(ParallelConfig())


def _concatenate(chunks):
    return reduce(operator.add, chunks, [])


@pytest.mark.parametrize(
    "inputs, expected",
    [
        ([], []),
        ([Fraction(1, 2)], [Fraction(1, 4)]),
        ([Fraction(1, 3), 2, Fraction(-3, 4)], [Fraction(1, 9), 4, Fraction(9, 16)]),
        (range(6), [0, 1, 4, 9, 16, 25]),
    ],
)
@pytest.mark.parametrize("n_jobs", [1, 2, 4])
def test_map_reduce_keeps_input_order(parallel_config, n_jobs, inputs, expected):
    job = MapReduceJob(
        inputs,
        map_func=lambda chunk: [x * x for x in chunk],
        reduce_func=_concatenate,
        config=parallel_config,
        n_jobs=n_jobs,
    )
    assert job() == expected


@pytest.mark.parametrize("n_jobs", [1, 3])
def test_map_reduce_exact_sum(parallel_config, n_jobs):
    """Sums of many small rationals come out exact whatever the chunking."""
    inputs = [Fraction(1, d) for d in range(1, 21)]
    job = MapReduceJob(
        inputs,
        map_func=lambda chunk: sum(chunk, Fraction(0)),
        reduce_func=lambda partials: sum(partials, Fraction(0)),
        config=parallel_config,
        n_jobs=n_jobs,
    )
    assert job() == sum(inputs, Fraction(0))
    assert isinstance(job(), Fraction)


def test_map_reduce_best_responses(parallel_config, coffee):
    dist, menu = coffee
    job = MapReduceJob(
        dist.types,
        map_func=lambda chunk, k: [best_response(v, menu, k).payment for v in chunk],
        reduce_func=_concatenate,
        map_kwargs=dict(k=2),
        config=parallel_config,
        n_jobs=3,
    )
    assert job() == [2, 4, 6]


def test_map_reduce_numpy_inputs(parallel_config):
    job = MapReduceJob(
        np.arange(10),
        map_func=np.sum,
        reduce_func=np.sum,
        config=parallel_config,
        n_jobs=2,
    )
    assert job() == 45


@pytest.mark.parametrize(
    "data, n_chunks, expected_chunks",
    [
        ([], 3, []),
        ([1, 2, 3], 2, [[1, 2], [3]]),
        ([1, 2, 3, 4], 2, [[1, 2], [3, 4]]),
        ([1, 2, 3, 4], 3, [[1, 2], [3], [4]]),
        ([1, 2, 3, 4], 5, [[1], [2], [3], [4]]),
        (list(range(5)), 42, [[i] for i in range(5)]),
        (range(10), 4, [range(0, 3), range(3, 6), range(6, 8), range(8, 10)]),
        (np.arange(10), 4, np.array_split(np.arange(10), 4)),
    ],
)
def test_chunkification(data, n_chunks, expected_chunks):
    chunks = MapReduceJob._chunkify(data, n_chunks)
    assert len(chunks) == len(expected_chunks)
    for x, y in zip(chunks, expected_chunks):
        if not isinstance(x, np.ndarray):
            assert x == y
        else:
            assert (x == y).all()


def test_chunkification_repeats_non_sequences():
    assert MapReduceJob._chunkify(7, 3) == [7, 7, 7]
    with pytest.raises(ValueError):
        MapReduceJob._chunkify([1], 0)


def test_map_reduce_job_partial_map_and_reduce_func(parallel_config):
    def map_func(x, y):
        return x + y

    def reduce_func(x, y):
        return np.sum(np.concatenate(x)) + y

    map_func = partial(map_func, y=10)
    reduce_func = partial(reduce_func, y=5)

    map_reduce_job = MapReduceJob(
        np.arange(10),
        map_func=map_func,
        reduce_func=reduce_func,
        config=parallel_config,
    )
    result = map_reduce_job()
    assert result == 150


def test_map_func_receives_job_id(parallel_config):
    def map_func(chunk, job_id=None):
        return [(job_id, x) for x in chunk]

    job = MapReduceJob(
        [1, 2, 3, 4],
        map_func=map_func,
        reduce_func=lambda r: reduce(operator.add, r, []),
        config=parallel_config,
        n_jobs=2,
    )
    result = job()
    assert [x for _, x in result] == [1, 2, 3, 4]
    if parallel_config.backend == "sequential":
        assert {j for j, _ in result} == {0}
    else:
        assert [j for j, _ in result] == [0, 0, 1, 1]
