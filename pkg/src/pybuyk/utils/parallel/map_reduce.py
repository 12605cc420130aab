import inspect
from itertools import accumulate, repeat
from typing import Any, Callable, Dict, Generic, List, Optional, Sequence, TypeVar, Union

from ..config import ParallelConfig
from .backend import init_parallel_backend

__all__ = ["MapReduceJob"]

T = TypeVar("T")
R = TypeVar("R")
Identity = lambda x, *args, **kwargs: x

MapFunction = Callable[..., R]
ReduceFunction = Callable[[List[R]], R]


def _maybe_add_job_id(func: Callable) -> Callable:
    """Wraps ``func`` so that it accepts (and ignores) a ``job_id`` keyword if
    it does not declare one."""
    try:
        params = inspect.signature(func).parameters
    except ValueError:
        params = {}  # type: ignore
    if "job_id" in params or any(
        p.kind == inspect.Parameter.VAR_KEYWORD for p in params.values()
    ):
        return func

    def wrapper(*args, job_id: Optional[int] = None, **kwargs):
        return func(*args, **kwargs)

    return wrapper


class MapReduceJob(Generic[T, R]):
    """Takes an embarrassingly parallel fun and runs it in ``n_jobs`` parallel
    jobs, splitting the data evenly into a number of chunks equal to the number
    of jobs.

    Chunks are contiguous and results are passed to ``reduce_func`` in input
    order, so any order-sensitive reduction (e.g. concatenation) is
    deterministic.

    :param inputs: The input that will be split and passed to ``map_func``. If
        it's not a sequence it will be repeated ``n_jobs`` times.
    :param map_func: Function that will be applied to the input chunks in each
        job.
    :param reduce_func: Function that will be applied to the list of results of
        ``map_func`` to reduce them.
    :param map_kwargs: Keyword arguments that will be passed to ``map_func`` in
        each job.
    :param reduce_kwargs: Keyword arguments that will be passed to
        ``reduce_func``.
    :param config: Instance of :class:`~pybuyk.utils.config.ParallelConfig`.
    :param n_jobs: Number of parallel jobs to run. Does not accept 0.

    :Examples:

    >>> from pybuyk.utils.parallel import MapReduceJob
    >>> map_reduce_job: MapReduceJob[list, int] = MapReduceJob(
    ...     [1, 2, 3, 4, 5],
    ...     map_func=sum,
    ...     reduce_func=sum,
    ...     n_jobs=2,
    ... )
    >>> map_reduce_job()
    15
    """

    def __init__(
        self,
        inputs: Union[Sequence[T], T],
        map_func: MapFunction[R],
        reduce_func: Optional[ReduceFunction[R]] = None,
        map_kwargs: Optional[Dict] = None,
        reduce_kwargs: Optional[Dict] = None,
        config: ParallelConfig = ParallelConfig(),
        *,
        n_jobs: int = -1,
    ):
        self.config = config
        self.parallel_backend = init_parallel_backend(self.config)

        self._n_jobs = 1
        # This uses the setter defined below
        self.n_jobs = n_jobs

        self.inputs_ = inputs
        self.map_kwargs = dict(map_kwargs or {})
        self.reduce_kwargs = dict(reduce_kwargs or {})
        self._map_func = _maybe_add_job_id(map_func)
        self._reduce_func = reduce_func if reduce_func is not None else Identity

    def __call__(self) -> R:
        return self.reduce(self.map(self.inputs_))

    def map(self, inputs: Union[Sequence[T], T]) -> List[R]:
        """Splits the input data into chunks and calls :func:`map_func` on
        them."""
        chunks = self._chunkify(inputs, n_chunks=self.n_jobs)
        return self.parallel_backend.run(self._map_func, chunks, **self.map_kwargs)

    def reduce(self, chunks: List[R]) -> R:
        """Reduces the results of
        :meth:`~pybuyk.utils.parallel.map_reduce.MapReduceJob.map`."""
        return self._reduce_func(chunks, **self.reduce_kwargs)

    @staticmethod
    def _chunkify(data: Any, n_chunks: int) -> List[Any]:
        """If data is a Sequence, it splits it into at most ``n_chunks``
        contiguous slices. Otherwise it repeats it ``n_chunks`` times."""
        if n_chunks <= 0:
            raise ValueError("Number of chunks should be greater than 0")

        if n_chunks == 1:
            return [data]

        try:
            n = len(data)
        except TypeError:
            return list(repeat(data, times=n_chunks))

        # Same split as numpy's array_split, without converting to an array
        chunk_size, remainder = divmod(n, n_chunks)
        chunk_indices = tuple(
            accumulate(
                [0] + remainder * [chunk_size + 1] + (n_chunks - remainder) * [chunk_size]
            )
        )
        return [
            data[start:end]
            for start, end in zip(chunk_indices[:-1], chunk_indices[1:])
            if start < end
        ]

    @property
    def n_jobs(self) -> int:
        """Effective number of jobs according to the used ParallelBackend
        instance."""
        return self._n_jobs

    @n_jobs.setter
    def n_jobs(self, value: int):
        self._n_jobs = self.parallel_backend.effective_n_jobs(value)
