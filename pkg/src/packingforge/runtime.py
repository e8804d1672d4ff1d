"""Execution knobs: the PACKING_FORGE_THREADS cap on concurrent batch
evaluation used by the audit suites."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "PACKING_FORGE_THREADS"


def thread_cap() -> int:
    """Worker-thread cap from PACKING_FORGE_THREADS; defaults to the
    available parallelism."""
    raw = os.environ.get(ENV_THREADS, "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def parallel_map(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """Map over independent work items, in order.

    Results must not depend on scheduling; callers pre-split deterministic
    chunks and reduce with order-independent operations (max/min), so the
    output is identical for any thread count.
    """
    cap = min(thread_cap(), len(items))
    if cap <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))


def chunk_ranges(n: int, chunk: int = 8192) -> list[tuple[int, int]]:
    """Deterministic [start, stop) batches independent of the thread cap."""
    return [(s, min(s + chunk, n)) for s in range(0, n, chunk)]
