# utils/timing.py - search deadlines and stopwatches
import time
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Dict, Iterator, Optional

from models.errors import SearchTimeoutError

_deadline: ContextVar[Optional[float]] = ContextVar("snarklab_deadline", default=None)


def set_current_deadline(when: Optional[float]) -> None:
    """Install a deadline for the current context (worker processes start without one)."""
    _deadline.set(when)


def current_deadline() -> Optional[float]:
    """Absolute time.monotonic() value at which searches must stop, if any."""
    return _deadline.get()


@contextmanager
def search_deadline(seconds: Optional[float]) -> Iterator[Optional[float]]:
    """Bound every search started inside the block; nested blocks keep the earlier deadline."""
    if seconds is None:
        yield _deadline.get()
        return
    new = time.monotonic() + seconds
    outer = _deadline.get()
    if outer is not None:
        new = min(new, outer)
    token = _deadline.set(new)
    try:
        yield new
    finally:
        _deadline.reset(token)


@contextmanager
def absolute_deadline(when: Optional[float]) -> Iterator[None]:
    token = _deadline.set(when)
    try:
        yield
    finally:
        _deadline.reset(token)


def check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise SearchTimeoutError("search deadline exceeded")


def remaining(deadline: Optional[float]) -> Optional[float]:
    if deadline is None:
        return None
    return max(0.0, deadline - time.monotonic())


class Stopwatch:
    """Collects wall-clock durations per named check."""

    def __init__(self):
        self.timings: Dict[str, float] = {}

    @contextmanager
    def measure(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round(self.timings.get(name, 0.0) + time.perf_counter() - start, 6)
