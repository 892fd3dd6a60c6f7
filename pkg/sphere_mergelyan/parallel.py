"""
Chunked fan-out of array evaluations over a thread pool.

Inputs are split into fixed-length chunks that do not depend on the worker
count, and results are reassembled in chunk order, so the output is the same
array whatever ``jobs`` is.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np

from config import settings

logger = logging.getLogger(__name__)


def chunked_map(
    func: Callable[[np.ndarray], np.ndarray],
    values: np.ndarray,
    jobs: int = 1,
    chunk_size: Optional[int] = None,
) -> np.ndarray:
    """Apply an elementwise array function chunk by chunk.

    Args:
        func: maps a 1-d array to an array of the same length
        values: 1-d input array
        jobs: worker threads; 1 runs inline
        chunk_size: chunk length, defaults to ``settings.verification.chunk_size``
    """
    values = np.asarray(values)
    size = chunk_size or settings.verification.chunk_size
    n = len(values)
    if n <= size:
        return np.asarray(func(values))

    chunks = [values[i:i + size] for i in range(0, n, size)]
    if jobs <= 1:
        parts = [func(chunk) for chunk in chunks]
    else:
        logger.debug(f"Evaluating {n} points in {len(chunks)} chunks on {jobs} workers")
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            parts = list(executor.map(func, chunks))
    return np.concatenate([np.asarray(p) for p in parts])


def chunked_max(
    func: Callable[[np.ndarray], np.ndarray],
    values: np.ndarray,
    jobs: int = 1,
    chunk_size: Optional[int] = None,
) -> float:
    """Max of ``func`` over ``values``; NaN results propagate."""
    out = chunked_map(func, values, jobs=jobs, chunk_size=chunk_size)
    if out.size == 0:
        return 0.0
    return float(np.max(out))
