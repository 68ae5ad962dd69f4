"""Ordered thread-pool map.

Results come back in input order regardless of completion order, so any
reduction done by the caller over the returned list is reproducible.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

_threads = 1


def set_threads(n: int) -> None:
    """Set the worker count; 0 selects ``os.cpu_count()``."""
    global _threads
    _threads = max(1, os.cpu_count() or 1) if n == 0 else max(1, int(n))


def get_threads() -> int:
    return _threads


def ordered_map(fn, items, threads: int | None = None) -> list:
    items = list(items)
    n = _threads if threads is None else threads
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
