"""Deterministic chunked evaluation of per-element terms.

Elements are split into fixed-size chunks independent of the worker count;
each chunk writes its own slice of the output, and reductions run afterwards
over the assembled array.  Results are therefore bit-identical for any number
of workers.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK = 1 << 15
_default_workers = 1


def set_default_workers(n: int) -> None:
    global _default_workers
    if n < 1:
        raise ValueError("worker count must be >= 1")
    _default_workers = int(n)


def default_workers() -> int:
    return _default_workers


def chunk_bounds(n: int, chunk: int = CHUNK) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]


def map_chunks(fn, n: int, out_shape_tail=(), dtype=np.complex128, workers: int | None = None,
               chunk: int = CHUNK) -> np.ndarray:
    """``out[lo:hi] = fn(lo, hi)`` over fixed chunks, optionally in threads."""
    workers = _default_workers if workers is None else max(1, int(workers))
    out = np.empty((n,) + tuple(out_shape_tail), dtype=dtype)
    bounds = chunk_bounds(n, chunk)

    def run(b):
        lo, hi = b
        out[lo:hi] = fn(lo, hi)

    if workers == 1 or len(bounds) <= 1:
        for b in bounds:
            run(b)
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(bounds))) as ex:
            list(ex.map(run, bounds))
    return out
