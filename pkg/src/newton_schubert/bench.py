"""Wall-clock comparison of the closed forms, Newton reduction and the
brute-force Leibniz iteration."""

from __future__ import annotations

import statistics
import time
from dataclasses import asdict, dataclass
from typing import Callable

from . import enumerative, newton
from .derivations import D, OperatorWord, _leibniz_shifts, apply_word, integral_of_word
from .exterior import Multivector, Shape, fundamental_index
from .newton import integrate_reduced, reduce_word

__all__ = ["BenchResult", "bench_suite", "SUITES", "time_median", "naive_term_count"]


@dataclass
class BenchResult:
    method: str
    seconds: float  # median wall time
    runs: list[float]
    terms: int
    value: int

    def as_json(self) -> dict:
        out = asdict(self)
        out["value"] = str(self.value)
        return out


def _clear_caches() -> None:
    enumerative.clear_caches()
    newton.clear_caches()


def time_median(fn: Callable[[], int], repeats: int = 3, cold: bool = True) -> tuple[float, list[float], int]:
    """Median wall time of ``fn`` over ``repeats`` runs, caches cleared before each."""
    runs = []
    value = None
    for _ in range(repeats):
        if cold:
            _clear_caches()
        start = time.perf_counter()
        value = fn()
        runs.append(time.perf_counter() - start)
    return statistics.median(runs), runs, value


def naive_term_count(shape: Shape, word: OperatorWord) -> int:
    """Number of (wedge, shift) updates the D-only Leibniz iteration performs."""
    v = Multivector.fundamental(shape)
    count = 0
    for f in reversed(word.factors):
        assert f.kind == "D"
        shifts = len(_leibniz_shifts(f.param, shape.k))
        for _ in range(f.exponent):
            count += len(v) * shifts
            v = apply_word(OperatorWord.of(D(f.param)), v)
    return count


def hyperstalls_term_count(n: int) -> int:
    """Inner (beta, l) terms the closed form visits after range pruning."""
    from .bigcomb import compositions

    top, count = n + 4, 0
    for b1, b2, b3, b4, b5 in compositions(5, 2 * n):
        if 1 + b1 > top or 2 + b2 + 2 * b5 > top:
            continue
        s, lo3, hi4 = b2 + b3, 3 + b3, 4 + b2 + b3 + 2 * b4
        count += max(0, min(s, top - lo3) - max(0, hi4 - top) + 1)
    return count


def _bench_hyperstalls(n: int, repeats: int, workers: int) -> list[BenchResult]:
    shape = Shape(4, n + 4)
    word = OperatorWord.of(D(2, 2 * n))
    g = fundamental_index(shape)
    results = []
    t, runs, value = time_median(lambda: enumerative.hyperstalls(n, workers=workers), repeats)
    results.append(BenchResult("closed-form", t, runs, hyperstalls_term_count(n), value))
    t, runs, value = time_median(lambda: integrate_reduced(reduce_word(word, g, shape)), repeats)
    results.append(BenchResult("newton-reduction", t, runs, len(reduce_word(word, g, shape)), value))
    t, runs, value = time_median(lambda: integral_of_word(shape, word), repeats)
    results.append(BenchResult("naive-leibniz", t, runs, naive_term_count(shape, word), value))
    return results


def _bench_intersect(n: int, repeats: int, workers: int) -> list[BenchResult]:
    # degree of G(2, n+2): sigma_1^(2n), against the Catalan closed form
    shape = Shape(2, n + 2)
    word = OperatorWord.of(D(1, 2 * n))
    g = fundamental_index(shape)
    results = []
    t, runs, value = time_median(lambda: enumerative.schubert_degree(g, shape), repeats)
    results.append(BenchResult("closed-form", t, runs, 1, value))
    t, runs, value = time_median(lambda: integrate_reduced(reduce_word(word, g, shape)), repeats)
    results.append(BenchResult("newton-reduction", t, runs, len(reduce_word(word, g, shape)), value))
    t, runs, value = time_median(lambda: integral_of_word(shape, word), repeats)
    results.append(BenchResult("naive-leibniz", t, runs, naive_term_count(shape, word), value))
    return results


SUITES = {"hyperstalls": _bench_hyperstalls, "intersect": _bench_intersect}


def bench_suite(suite: str, n: int, repeats: int = 3, workers: int = 1) -> list[BenchResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    return SUITES[suite](n, repeats, workers)
