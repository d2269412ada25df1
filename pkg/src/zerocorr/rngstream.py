"""Counter-based random streams and worker-count-independent reductions.

Every stochastic computation in the package draws from Philox streams keyed
by ``(seed, chunk_index)`` over fixed-size chunks of samples.  Chunk results
are combined in chunk order, so the outcome is bit-identical no matter how
many workers processed the chunks or in which order they finished.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterator, Sequence

import numpy as np

CHUNK_SIZE = 16384

_ENV_WORKER_CAP = "ZEROCORR_WORKERS"


def chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    """Independent generator for one chunk of one logical stream."""
    key = np.array([seed, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def chunk_plan(total: int, chunk_size: int = CHUNK_SIZE) -> list[tuple[int, int]]:
    """Split ``total`` samples into (chunk_index, count) pairs.

    The chunk grid is fixed by ``chunk_size`` alone, so estimates do not
    depend on how many samples beyond a chunk boundary were requested by
    other runs.
    """
    plan = []
    start = 0
    index = 0
    while start < total:
        count = min(chunk_size, total - start)
        plan.append((index, count))
        start += count
        index += 1
    return plan


def resolve_workers(workers: int | None) -> int:
    """Apply the environment cap and hardware default to a worker request."""
    if workers is None or workers <= 0:
        workers = os.cpu_count() or 1
    cap = os.environ.get(_ENV_WORKER_CAP)
    if cap:
        workers = min(workers, max(1, int(cap)))
    return workers


def map_chunks(
    fn: Callable,
    args: Sequence[tuple],
    workers: int = 1,
) -> Iterator:
    """Apply ``fn`` to each argument tuple, yielding results in input order.

    ``fn`` must be a picklable top-level callable when ``workers > 1``.
    Results are yielded in the order of ``args`` regardless of scheduling,
    which is what makes downstream reductions worker-count independent.
    """
    if workers <= 1 or len(args) <= 1:
        for a in args:
            yield fn(*a)
        return
    with ProcessPoolExecutor(max_workers=min(workers, len(args))) as pool:
        yield from pool.map(fn, *zip(*args))


class RunningMoments:
    """Accumulates sum and sum of squares for a mean / standard-error pair."""

    def __init__(self) -> None:
        self.total = 0.0
        self.total_sq = 0.0
        self.count = 0

    def add(self, total: float, total_sq: float, count: int) -> None:
        self.total += total
        self.total_sq += total_sq
        self.count += count

    @property
    def mean(self) -> float:
        return self.total / self.count if self.count else 0.0

    @property
    def stderr(self) -> float:
        if self.count < 2:
            return float("inf") if self.count else 0.0
        var = (self.total_sq - self.count * self.mean**2) / (self.count - 1)
        return float(np.sqrt(max(var, 0.0) / self.count))
