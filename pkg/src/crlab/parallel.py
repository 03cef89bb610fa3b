"""Deterministic helpers for optional thread-level parallelism.

Work items are independent and results are collected in input order, so
outputs are identical for every thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

THREADS_ENV_VAR = "CRLAB_THREADS"

_T = TypeVar("_T")
_R = TypeVar("_R")


def resolve_threads(requested: int | None = None) -> int:
    """Pick a thread count: explicit value, else CRLAB_THREADS, else cpu count."""
    if requested is None:
        env = os.environ.get(THREADS_ENV_VAR)
        if env is not None:
            try:
                requested = int(env)
            except ValueError as exc:
                raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {env!r}") from exc
        else:
            requested = os.cpu_count() or 1
    if requested < 1:
        raise ValueError(f"thread count must be >= 1, got {requested}")
    return requested


def ordered_parallel_map(
    fn: Callable[[_T], _R], items: Iterable[_T], threads: int = 1
) -> list[_R]:
    """Map fn over items, preserving input order in the result list."""
    seq: Sequence[_T] = list(items)
    if threads <= 1 or len(seq) < 2:
        return [fn(item) for item in seq]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, seq))
