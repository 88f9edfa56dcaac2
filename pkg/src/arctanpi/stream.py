"""Binary64 streaming benchmark over the asymptotic pi terms at x = 1.

At x = 1 the reciprocal-pair term collapses to 16L / ((2l-1)^2 + 4L^2), so
the stream never materializes: JIT-compiled kernels generate and fold terms
on the fly at C speed.  The pairwise kernel sums fixed chunk ranges
sequentially (each range on whichever thread picks it up; the kernels drop
the GIL) and combines chunk results through a balanced tree in index order,
so its output is a pure function of (L, chunk) regardless of thread count.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from math import ulp
from typing import Optional

from numba import njit

from .engine import pi_direct_exact
from .numerics.rational import rational_to_decimal

STREAM_KERNELS = ("sequential", "compensated", "pairwise")

# Exact-mode direct value at L = 10^6, rendered to 60 significant digits:
# the stock validation anchor for large benchmarks.  Recomputing it exactly
# takes ~20 s, so the renderer output is cached here; any other reduced L is
# computed live.
_VALIDATION_CACHE_L = 10**6
_VALIDATION_CACHE_VALUE: Optional[str] = (
    "3.14159265358987657179597671661283621752858060969256613843526"
)


@njit(cache=True, nogil=True)
def _seq_range(L: int, lo: int, hi: int) -> float:
    scale = 16.0 * L
    shift = 4.0 * L * L
    total = 0.0
    for l in range(lo, hi):
        odd = 2.0 * l - 1.0
        total += scale / (odd * odd + shift)
    return total


@njit(cache=True, nogil=True)
def _compensated_range(L: int, lo: int, hi: int) -> float:
    scale = 16.0 * L
    shift = 4.0 * L * L
    total = 0.0
    carry = 0.0
    for l in range(lo, hi):
        odd = 2.0 * l - 1.0
        value = scale / (odd * odd + shift)
        t = total + value
        if abs(total) >= abs(value):
            carry += (total - t) + value
        else:
            carry += (value - t) + total
        total = t
    return total + carry


def _tree_combine(partials: list[float]) -> float:
    level = partials
    while len(level) > 1:
        nxt = [level[i] + level[i + 1] for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0] if level else 0.0


def stream_pi_terms(L: int, kernel: str, chunk: int = 1 << 20, threads: int = 1) -> float:
    """Fold the L-term binary64 stream with the chosen kernel.

    ``threads`` parallelizes the pairwise kernel only; by construction it
    cannot change the result.
    """
    if L < 1:
        raise ValueError(f"L must be >= 1, got {L}")
    if chunk < 1:
        raise ValueError(f"chunk must be >= 1, got {chunk}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if kernel == "sequential":
        return _seq_range(L, 1, L + 1)
    if kernel == "compensated":
        return _compensated_range(L, 1, L + 1)
    if kernel != "pairwise":
        raise ValueError(f"unknown kernel {kernel!r}; expected one of {STREAM_KERNELS}")
    bounds = [(lo, min(lo + chunk, L + 1)) for lo in range(1, L + 1, chunk)]
    if threads == 1 or len(bounds) == 1:
        partials = [_seq_range(L, lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            partials = list(pool.map(lambda b: _seq_range(L, b[0], b[1]), bounds))
    return _tree_combine(partials)


def validation_value(L: int, figures: int = 60) -> Decimal:
    """Exact-mode direct value at min(L, 10^6), rendered to ``figures``."""
    reduced = min(L, _VALIDATION_CACHE_L)
    if reduced == _VALIDATION_CACHE_L and _VALIDATION_CACHE_VALUE and figures <= 60:
        return Decimal(_VALIDATION_CACHE_VALUE[: figures + 1])
    return rational_to_decimal(pi_direct_exact(reduced), figures)


@dataclass(frozen=True)
class BenchReport:
    """Timing, throughput and validation for one streamed fold."""

    kernel: str
    L: int
    chunk: int
    threads: int
    value: float
    value_hex: str
    elapsed_s: float
    terms_per_sec: float
    validation_L: int
    validation_exact: str
    deviation: str
    deviation_ulps: float
    deterministic: Optional[bool]


def run_bench(L: int, kernel: str, chunk: int = 1 << 20, threads: int = 1) -> BenchReport:
    """Time one fold of the stream and validate it against exact mode.

    The deviation is measured against the exact value at min(L, 10^6); when
    L exceeds that, it includes the truncation gap between the two orders
    and is reported rather than asserted.  Pairwise runs are executed twice
    and must agree bit for bit.
    """
    # warm the JIT outside the timed region
    stream_pi_terms(min(L, 10), kernel, chunk=chunk, threads=1)
    started = time.perf_counter()
    value = stream_pi_terms(L, kernel, chunk=chunk, threads=threads)
    elapsed = time.perf_counter() - started

    deterministic: Optional[bool] = None
    if kernel == "pairwise":
        rerun = stream_pi_terms(L, kernel, chunk=chunk, threads=threads)
        deterministic = rerun.hex() == value.hex()

    exact = validation_value(L)
    deviation = abs(Decimal(value) - exact)
    ulps = float(deviation) / ulp(float(exact))
    return BenchReport(
        kernel=kernel,
        L=L,
        chunk=chunk,
        threads=threads,
        value=value,
        value_hex=value.hex(),
        elapsed_s=elapsed,
        terms_per_sec=(L / elapsed) if elapsed > 0 else float("inf"),
        validation_L=min(L, _VALIDATION_CACHE_L),
        validation_exact=str(exact),
        deviation=str(deviation),
        deviation_ulps=ulps,
        deterministic=deterministic,
    )
