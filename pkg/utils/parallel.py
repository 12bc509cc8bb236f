# utils/parallel.py - order-preserving process pools
"""
Helpers for fanning independent subproblems out to worker processes.

Results always come back in input order, so a parallel run reduces to exactly
what the sequential loop would have produced. The caller's search deadline is
carried into each worker.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, Sequence

from utils.timing import current_deadline, set_current_deadline

logger = logging.getLogger(__name__)


def _bootstrap(deadline: Optional[float], initializer: Optional[Callable], initargs: Sequence) -> None:
    set_current_deadline(deadline)
    if initializer is not None:
        initializer(*initargs)


def _chunksize(n: int, jobs: int) -> int:
    return max(1, n // (jobs * 4))


def parallel_map(
    func: Callable[[Any], Any],
    items: Iterable[Any],
    jobs: int = 1,
    initializer: Optional[Callable] = None,
    initargs: Sequence = (),
) -> List[Any]:
    """map() over items with `jobs` processes; `initializer` prepares per-process state."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        if initializer is not None:
            initializer(*initargs)
        return [func(x) for x in items]
    logger.debug("parallel_map: %d items on %d workers", len(items), jobs)
    with ProcessPoolExecutor(
        max_workers=jobs,
        initializer=_bootstrap,
        initargs=(current_deadline(), initializer, tuple(initargs)),
    ) as pool:
        return list(pool.map(func, items, chunksize=_chunksize(len(items), jobs)))


def parallel_first(
    func: Callable[[Any], Any],
    items: Iterable[Any],
    jobs: int = 1,
    initializer: Optional[Callable] = None,
    initargs: Sequence = (),
    batch: Optional[int] = None,
) -> Optional[int]:
    """Index of the first item (in input order) for which func is truthy, or None."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        if initializer is not None:
            initializer(*initargs)
        for i, x in enumerate(items):
            if func(x):
                return i
        return None
    batch = batch or jobs * 8
    with ProcessPoolExecutor(
        max_workers=jobs,
        initializer=_bootstrap,
        initargs=(current_deadline(), initializer, tuple(initargs)),
    ) as pool:
        for start in range(0, len(items), batch):
            chunk = items[start:start + batch]
            for j, hit in enumerate(pool.map(func, chunk)):
                if hit:
                    return start + j
    return None
