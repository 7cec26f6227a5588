"""Exact integer combinatorics: factorials, binomials, multinomials and
weak compositions.

Every function here returns Python ints, so results are exact at any size.
"""

from __future__ import annotations

import math
import threading
from typing import Iterator, Sequence

__all__ = [
    "factorial",
    "binomial",
    "multinomial",
    "compositions",
    "count_compositions",
    "ensure_factorials",
]

# Shared factorial table; grown on demand. Readers index it without the lock,
# fills take the lock and only ever append, so concurrent fills are idempotent.
_FACTORIALS: list[int] = [1]
_FILL_LOCK = threading.Lock()
DEFAULT_FACTORIAL_BOUND = 64


def ensure_factorials(bound: int) -> None:
    """Make sure ``factorial(j)`` is memoized for every ``j <= bound``."""
    if bound < len(_FACTORIALS):
        return
    with _FILL_LOCK:
        table = _FACTORIALS
        value = table[-1]
        for j in range(len(table), bound + 1):
            value *= j
            table.append(value)


def factorial(j: int) -> int:
    if j < 0:
        raise ValueError(f"factorial of negative integer {j}")
    if j >= len(_FACTORIALS):
        ensure_factorials(max(j, 2 * len(_FACTORIALS), DEFAULT_FACTORIAL_BOUND))
    return _FACTORIALS[j]


def binomial(n: int, j: int) -> int:
    """Binomial coefficient with the zero convention: 0 if j < 0, n < 0 or j > n."""
    if j < 0 or n < 0 or j > n:
        return 0
    return math.comb(n, j)


def multinomial(m: int, mu: Sequence[int]) -> int:
    """``m! / (mu_1! ... mu_h!)`` if ``mu`` is a weak composition of ``m``, else 0."""
    if m < 0 or any(part < 0 for part in mu) or sum(mu) != m:
        return 0
    result = factorial(m)
    for part in mu:
        if part > 1:
            result //= factorial(part)
    return result


def count_compositions(h: int, m: int) -> int:
    """Number of weak compositions of ``m`` into ``h`` parts."""
    if h == 0:
        return 1 if m == 0 else 0
    return binomial(m + h - 1, h - 1)


def compositions(h: int, m: int) -> Iterator[tuple[int, ...]]:
    """Yield every weak composition of ``m`` into ``h`` parts, lexicographically.

    The stream is lazy; nothing is materialized, so huge counts are fine.
    """
    if h < 1:
        raise ValueError(f"number of parts must be positive, got {h}")
    if m < 0:
        return
    parts = [0] * h
    parts[-1] = m
    yield tuple(parts)
    if h == 1:
        return
    while True:
        # The successor bumps the rightmost position that still has mass to
        # its right; the moved mass minus one lands in the last slot.
        if parts[-1] > 0:
            parts[-2] += 1
            parts[-1] -= 1
        else:
            j = h - 2
            while j >= 0 and parts[j] == 0:
                j -= 1
            if j <= 0:
                return
            carried = parts[j]
            parts[j] = 0
            parts[j - 1] += 1
            parts[-1] = carried - 1
        yield tuple(parts)
