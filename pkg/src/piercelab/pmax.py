"""P(n) = max over starts of the orbit step count, at scale.

pmax_dp fills an n-entry table in one ascending pass: the step count of a
only needs the count at n mod a, which is strictly smaller and therefore
already final.  pmax_naive recomputes every orbit from scratch in pure
Python and exists solely to cross-check the table pass; the two never
share code.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .trajectory import DomainError, steps_count

#: steps_table streaming granularity, in table entries
CHUNK = 1 << 20

#: table entries are uint16; counts beyond this are a hard error, never a wrap
COUNTER_MAX = 0xFFFF


class ResourceError(RuntimeError):
    """Table would not fit in memory; message reports the required size."""


class CounterOverflowError(OverflowError):
    """A step count exceeded the table's counter width."""


@dataclass(frozen=True)
class PmaxResult:
    n: int
    pmax: int
    argmax: int  # smallest start attaining pmax
    table_digest: str | None = None


def _alloc_table(n: int) -> np.ndarray:
    try:
        return np.zeros(n + 1, np.uint16)
    except MemoryError as exc:
        raise ResourceError(
            f"step table for n={n} needs {2 * (n + 1)} bytes; allocation failed"
        ) from exc


def _fill_table(n: int) -> tuple[np.ndarray, int, int]:
    from . import _kernels

    table = _alloc_table(n)
    pmax, argmax = (int(v) for v in _kernels.dp_fill(n, table))
    if pmax < 0:
        raise CounterOverflowError(
            f"a step count for n={n} exceeded {COUNTER_MAX}; widen the table counters"
        )
    return table, pmax, argmax


def pmax_dp(n: int, digest: bool = False) -> PmaxResult:
    """Exact P(n) and its smallest witness via the ascending table pass."""
    if n < 1:
        raise DomainError(f"pmax needs n >= 1, got {n}")
    table, pmax, argmax = _fill_table(n)
    table_digest = None
    if digest:
        table_digest = f"{zlib.crc32(table[1:].tobytes()):08x}"
    return PmaxResult(n=n, pmax=pmax, argmax=argmax, table_digest=table_digest)


def pmax_naive(n: int) -> PmaxResult:
    """Brute-force oracle: iterate every orbit independently.

    Feasible up to n around 1e5; used to certify pmax_dp, so it must stay
    a direct reimplementation of the definition.
    """
    if n < 1:
        raise DomainError(f"pmax needs n >= 1, got {n}")
    best = 0
    besta = 1
    for a in range(1, n + 1):
        p = steps_count(a, n)
        if p > best:
            best = p
            besta = a
    return PmaxResult(n=n, pmax=best, argmax=besta)


def steps_table(n: int, chunk: int = CHUNK):
    """Stream the full table of step counts for a = 1..n.

    Yields (start_index, block) pairs where block[i] is the count for
    a = start_index + i; blocks are views into one backing table, so
    consumers that keep them should copy.
    """
    if n < 1:
        raise DomainError(f"steps table needs n >= 1, got {n}")
    if chunk < 1:
        raise DomainError(f"chunk must be >= 1, got {chunk}")
    table, _, _ = _fill_table(n)
    for start in range(1, n + 1, chunk):
        yield start, table[start : min(start + chunk, n + 1)]
