"""Thread-pool plumbing for the embarrassingly parallel grid sweeps.

The WALKLAB_THREADS environment variable caps the worker count.  Each row of
a sweep is computed by the same pure function regardless of pool size and
results are assembled in row order, so output is bit-identical for any
worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, TypeVar

T = TypeVar("T")

__all__ = ["worker_count", "run_rows"]


def worker_count() -> int:
    """Worker cap from WALKLAB_THREADS, defaulting to the CPU count (max 8)."""
    env = os.environ.get("WALKLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"WALKLAB_THREADS must be an integer, got {env!r}") from exc
    return max(1, min(8, os.cpu_count() or 1))


def run_rows(fn: Callable[[int], T], n_rows: int) -> List[T]:
    """Evaluate ``fn(0) .. fn(n_rows - 1)``, possibly on a thread pool."""
    workers = min(worker_count(), max(1, n_rows))
    if workers == 1:
        return [fn(i) for i in range(n_rows)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n_rows)))
