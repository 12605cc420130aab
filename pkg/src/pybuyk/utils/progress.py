from typing import Iterable, Iterator, Union

from tqdm.auto import tqdm

__all__ = ["maybe_progress"]


def maybe_progress(
    it: Union[int, Iterable, Iterator], display: bool = False, **kwargs
) -> tqdm:
    """Wraps an iterable in a tqdm progress bar which is only drawn if
    ``display`` is set.

    Long exhaustive enumerations (cover-free verification, greedy families,
    menu searches) use this so that progress can be switched on from the
    command line without changing the iteration code.

    :param it: the iterator to wrap. An integer is turned into a range.
    :param display: set to True to draw the bar
    :param kwargs: Keyword arguments that will be forwarded to tqdm
    """
    if isinstance(it, int):
        it = range(it)
    kwargs.setdefault("leave", False)
    return tqdm(it, disable=not display, **kwargs)
