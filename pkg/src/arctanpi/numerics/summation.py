"""Binary64 summation kernels with explicit rounding behaviour.

Three strategies over the same term stream:

* ``sum_sequential`` -- plain left-to-right folding; the baseline whose
  rounding loss the others are measured against.
* ``sum_compensated`` -- Neumaier's carry-term variant of Kahan summation;
  error stays bounded regardless of term count.
* ``sum_pairwise`` -- contiguous chunks folded sequentially, then combined
  through a balanced binary tree in fixed index order.  The result is a pure
  function of (terms, chunk): thread count never changes a bit.

All kernels validate finiteness up front; a NaN or infinity in the stream is
an input error, not something to propagate quietly.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Sequence

import numpy as np


def _as_term_array(terms: Iterable[float]) -> np.ndarray:
    arr = np.asarray(list(terms) if not isinstance(terms, (np.ndarray, list, tuple)) else terms,
                     dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size and not np.isfinite(arr).all():
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise ValueError(f"non-finite term at index {bad}: {arr[bad]!r}")
    return arr


def sum_sequential(terms: Iterable[float]) -> float:
    """Left-to-right binary64 sum. Deterministic, maximally rounding-prone."""
    arr = _as_term_array(terms)
    total = 0.0
    for value in arr:
        total += float(value)
    return total


def sum_compensated(terms: Iterable[float]) -> float:
    """Neumaier compensated sum: carries the rounding residue alongside."""
    arr = _as_term_array(terms)
    total = 0.0
    carry = 0.0
    for value in arr:
        v = float(value)
        t = total + v
        if abs(total) >= abs(v):
            carry += (total - t) + v
        else:
            carry += (v - t) + total
        total = t
    return total + carry


def _tree_combine(partials: list[float]) -> float:
    """Fold a list of chunk sums pairwise in fixed index order."""
    if not partials:
        return 0.0
    level = partials
    while len(level) > 1:
        nxt = [level[i] + level[i + 1] for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def _chunk_bounds(n: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]


def sum_pairwise(terms: Sequence[float], chunk: int, threads: int = 1) -> float:
    """Chunked-sequential sums combined by a fixed-order balanced tree.

    ``threads`` is a parallelism width only; the result depends exclusively
    on (terms, chunk).  With ``chunk >= len(terms)`` this degenerates to
    ``sum_sequential`` bit for bit.
    """
    if chunk < 1:
        raise ValueError(f"chunk must be >= 1, got {chunk}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    arr = _as_term_array(terms)
    n = arr.size
    if n == 0:
        return 0.0
    bounds = _chunk_bounds(n, chunk)

    def chunk_sum(bound: tuple[int, int]) -> float:
        total = 0.0
        for i in range(bound[0], bound[1]):
            total += float(arr[i])
        return total

    if threads == 1 or len(bounds) == 1:
        partials = [chunk_sum(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(chunk_sum, bounds))
    return _tree_combine(partials)
