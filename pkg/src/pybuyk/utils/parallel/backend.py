from abc import ABCMeta, abstractmethod
from typing import Any, Callable, Dict, List, Sequence, Type

from joblib import Parallel, delayed
from joblib import effective_n_jobs as joblib_effective_n_jobs

from ..config import ParallelConfig

__all__ = ["init_parallel_backend", "effective_n_jobs"]

_PARALLEL_BACKENDS: Dict[str, "Type[BaseParallelBackend]"] = {}


class NoPublicConstructor(ABCMeta):
    """Metaclass that ensures a private constructor. Backends are obtained
    with :func:`init_parallel_backend`.
    """

    def __call__(cls, *args, **kwargs):
        raise TypeError(
            f"{cls.__module__}.{cls.__qualname__} cannot be initialized directly. "
            "Use init_parallel_backend() instead."
        )

    def _create(cls, *args: Any, **kwargs: Any):
        return super().__call__(*args, **kwargs)


class BaseParallelBackend(metaclass=NoPublicConstructor):
    """Abstract base class for all parallel backends. Subclasses register
    themselves under ``backend_name``."""

    def __init_subclass__(cls, *, backend_name: str, **kwargs):
        _PARALLEL_BACKENDS[backend_name] = cls
        super().__init_subclass__(**kwargs)

    def __init__(self, config: ParallelConfig):
        self.config = config

    @abstractmethod
    def run(self, fun: Callable, chunks: Sequence[Any], **kwargs) -> List[Any]:
        """Applies ``fun`` to every chunk and returns the results in input
        order."""
        ...

    @abstractmethod
    def _effective_n_jobs(self, n_jobs: int) -> int:
        ...

    def effective_n_jobs(self, n_jobs: int = -1) -> int:
        if n_jobs == 0:
            raise ValueError("n_jobs == 0 in Parallel has no meaning")
        return self._effective_n_jobs(n_jobs)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}: {self.config}>"


class SequentialParallelBackend(BaseParallelBackend, backend_name="sequential"):
    """Runs jobs one after the other in the calling process."""

    def run(self, fun: Callable, chunks: Sequence[Any], **kwargs) -> List[Any]:
        return [fun(chunk, job_id=j, **kwargs) for j, chunk in enumerate(chunks)]

    def _effective_n_jobs(self, n_jobs: int) -> int:
        return 1


class JoblibParallelBackend(BaseParallelBackend, backend_name="joblib"):
    """Dispatches jobs with :class:`joblib.Parallel`. The backend used by
    joblib (processes or threads) is taken from the configuration."""

    def run(self, fun: Callable, chunks: Sequence[Any], **kwargs) -> List[Any]:
        with Parallel(
            n_jobs=len(chunks), backend=self.config.joblib_backend
        ) as parallel:
            return parallel(  # type: ignore
                delayed(fun)(chunk, job_id=j, **kwargs)
                for j, chunk in enumerate(chunks)
            )

    def _effective_n_jobs(self, n_jobs: int) -> int:
        if n_jobs < 0:
            if self.config.n_local_workers is not None:
                return self.config.n_local_workers
            return int(joblib_effective_n_jobs(n_jobs))
        return n_jobs


def init_parallel_backend(config: ParallelConfig) -> BaseParallelBackend:
    """Initializes the parallel backend and returns an instance of it.

    :param config: instance of :class:`~pybuyk.utils.config.ParallelConfig`

    :Example:

    >>> from pybuyk.utils.parallel.backend import init_parallel_backend
    >>> from pybuyk.utils.config import ParallelConfig
    >>> init_parallel_backend(ParallelConfig(backend="sequential"))
    <SequentialParallelBackend: ParallelConfig(backend='sequential', n_local_workers=None, joblib_backend='loky')>
    """
    try:
        parallel_backend_cls = _PARALLEL_BACKENDS[config.backend]
    except KeyError:
        raise NotImplementedError(f"Unexpected parallel backend {config.backend}")
    return parallel_backend_cls._create(config)  # type: ignore


def effective_n_jobs(n_jobs: int, config: ParallelConfig = ParallelConfig()) -> int:
    """Returns the effective number of jobs.

    :param n_jobs: the number of jobs requested. If -1, the number of available
        CPUs is returned (joblib backend only).
    :param config: instance of :class:`~pybuyk.utils.config.ParallelConfig`
    :return: the effective number of jobs, guaranteed to be >= 1.
    :raises RuntimeError: if the backend reports fewer than one job.
    """
    parallel_backend = init_parallel_backend(config)
    if (eff_n_jobs := parallel_backend.effective_n_jobs(n_jobs)) < 1:
        raise RuntimeError(
            f"Invalid number of jobs {eff_n_jobs} obtained from parallel backend {config.backend}"
        )
    return eff_n_jobs
