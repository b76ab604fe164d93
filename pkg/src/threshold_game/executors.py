import os
from typing import Callable, List, Optional, Protocol, Sequence, TypeVar

import dask
from dask import delayed


_T = TypeVar("_T")
_R = TypeVar("_R")


class Executor(Protocol):
    """
    Maps a function over items, returning results in input order.
    """

    def __call__(self, func: Callable[[_T], _R], items: Sequence[_T]) -> List[_R]:
        ...


def basic_executor() -> Executor:
    def execute(func: Callable[[_T], _R], items: Sequence[_T]) -> List[_R]:
        return [func(item) for item in items]

    return execute


def dask_executor(threads: int) -> Executor:
    def execute(func: Callable[[_T], _R], items: Sequence[_T]) -> List[_R]:
        tasks = [delayed(func)(item) for item in items]
        results = dask.compute(*tasks, scheduler="threads", num_workers=threads)
        return list(results)

    return execute


def executor_for(threads: Optional[int] = None) -> Executor:
    count = threads if threads is not None else (os.cpu_count() or 1)
    if count <= 1:
        return basic_executor()
    return dask_executor(count)
