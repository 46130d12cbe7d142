"""Reproducible random-number streams for block-parallel Monte Carlo.

Paths are processed in fixed-size blocks.  Each block owns an independent
Philox counter-based stream keyed by (seed, block index), so results are
bit-identical for a fixed seed no matter how many workers process the
blocks, and no matter in which order they finish.
"""

from __future__ import annotations

import os

import numpy as np

BLOCK_SIZE = 8192

_ENV_WORKERS = "INTERVAL_AVOID_THREADS"


def block_stream(seed: int, block_index: int) -> np.random.Generator:
    """Independent counter-based stream for one block of paths."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(block_index),))
    return np.random.Generator(np.random.Philox(ss))


def iter_blocks(n: int, block_size: int = BLOCK_SIZE):
    """Yield (block_index, offset, count) covering ``n`` paths."""
    index = 0
    offset = 0
    while offset < n:
        count = min(block_size, n - offset)
        yield index, offset, count
        index += 1
        offset += count


def worker_count() -> int:
    """Worker cap from the environment; defaults to sequential execution."""
    raw = os.environ.get(_ENV_WORKERS)
    if not raw:
        return 1
    try:
        requested = int(raw)
    except ValueError:
        return 1
    cpus = os.cpu_count() or 1
    return max(1, min(requested, cpus))
