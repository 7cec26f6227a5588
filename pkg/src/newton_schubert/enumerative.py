"""Closed-form evaluators: degrees of Schubert varieties, the power kernels
for D_2 and Dbar on small wedges, and the counts of pencils, nets and webs
on the projective line with prescribed ramification.

The composition-indexed sums can be spread over worker processes; the
outermost composition part is dealt round-robin to workers and the exact
partial sums are added, so the answer never depends on the worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Sequence

from .bigcomb import binomial, compositions, ensure_factorials, factorial, multinomial
from .exterior import Multivector, Shape, _sort_sign, accumulate, weight
from .newton import ReducedForm

__all__ = [
    "BalanceError",
    "schubert_degree",
    "dbar_power_kernel",
    "d2_power_kernels",
    "pencil_product",
    "scherbak",
    "count_nets",
    "count_webs",
    "hyperstalls",
    "ranestad",
    "net_balance",
    "web_balance",
    "KERNEL_VARIANTS",
]


class BalanceError(ValueError):
    """Ramification data whose total weight does not match (r+1)(d-r)."""

    def __init__(self, message: str, expected: int, actual: int):
        super().__init__(message)
        self.expected = expected
        self.actual = actual


@lru_cache(maxsize=None)
def _omega_sorted(index: tuple[int, ...], n: int) -> int:
    k = len(index)
    free = k * (n - k) - weight(index)
    if free < 0:
        return 0
    vandermonde = 1
    for a in range(k):
        for b in range(a + 1, k):
            vandermonde *= index[b] - index[a]
    denom = 1
    for i in index:
        denom *= factorial(n - i)
    value, rem = divmod(factorial(free) * vandermonde, denom)
    assert rem == 0, (index, n)
    return value


def _omega_raw(raw: Sequence[int], n: int) -> int:
    norm = _sort_sign(raw, n)
    if norm is None:
        return 0
    if norm[0][0] < 1:
        return 0
    return norm[1] * _omega_sorted(norm[0], n)


def schubert_degree(J: Sequence[int], shape: Shape) -> int:
    """Degree of the Schubert variety Omega_J in the Plücker embedding.

    ``J`` may be unsorted: the value picks up the sign of the sorting
    permutation, and is 0 if J repeats an entry or leaves 1..n.
    """
    if len(J) != shape.k:
        raise ValueError(f"index of length {len(J)} for k = {shape.k}")
    if any(i < 1 for i in J):
        return 0
    return _omega_raw(tuple(J), shape.n)


def dbar_power_kernel(h: int, m: int, index: Sequence[int], shape: Shape) -> Multivector:
    """``Dbar_{h-1}^m`` on an h-wedge as a multinomial sum over p_h(m)."""
    index = tuple(index)
    if len(index) != h or shape.k != h:
        raise ValueError("kernel needs an h-wedge in the h-th exterior power")
    items = (
        ([i + m - mu_p for i, mu_p in zip(index, mu)], multinomial(m, mu))
        for mu in compositions(h, m)
    )
    return Multivector.from_raw_terms(shape, items)


def _reduced_from_raw(shape: Shape, items) -> ReducedForm:
    out: dict = {}
    n = shape.n
    for j, raw, coeff in items:
        norm = _sort_sign(raw, n)
        if norm is not None and min(norm[0]) >= 1:
            accumulate(out, (j, norm[0]), norm[1] * coeff)
    return ReducedForm(shape, out, check=False)


KERNEL_VARIANTS = ("D2-on-3wedge", "D2-on-4wedge", "Dbar2-on-4wedge")


def d2_power_kernels(variant: str, m: int, index: Sequence[int], shape: Shape):
    """Closed forms for D_2^m on 3- and 4-wedges and Dbar_2^m on 4-wedges.

    The two D_2 variants return a :class:`ReducedForm` with D_1-powers left
    unexpanded; the Dbar_2 variant returns a plain :class:`Multivector`.
    """
    i = tuple(index)
    if variant == "D2-on-3wedge":
        if len(i) != 3 or shape.k != 3:
            raise ValueError("D2-on-3wedge needs a 3-wedge")
        items = (
            (mu[0], (i[0] + mu[0], i[1] + mu[1] + 2 * mu[3], i[2] + 2 * mu[2] + mu[1]),
             multinomial(m, mu))
            for mu in compositions(4, m)
        )
        return _reduced_from_raw(shape, items)
    if variant == "D2-on-4wedge":
        if len(i) != 4 or shape.k != 4:
            raise ValueError("D2-on-4wedge needs a 4-wedge")

        def gen():
            for mu in compositions(5, m):
                c = multinomial(m, mu)
                s = mu[1] + mu[2]
                for l in range(s + 1):
                    raw = (i[0] + mu[0], i[1] + mu[1] + 2 * mu[4], i[2] + mu[2] + l,
                           i[3] + mu[1] + 2 * mu[3] + mu[2] - l)
                    yield mu[0], raw, c * binomial(s, l)

        return _reduced_from_raw(shape, gen())
    if variant == "Dbar2-on-4wedge":
        if len(i) != 4 or shape.k != 4:
            raise ValueError("Dbar2-on-4wedge needs a 4-wedge")

        def gen_plain():
            for mu in compositions(4, m):
                c = multinomial(m, mu)
                s = mu[0] + mu[1]
                for l in range(s + 1):
                    yield ((i[0] + mu[0] + mu[3], i[1] + mu[1] + mu[3], i[2] + mu[2] + l,
                            i[3] + mu[0] + mu[1] + mu[2] - l), c * binomial(s, l))

        return Multivector.from_raw_terms(shape, gen_plain())
    raise ValueError(f"unknown kernel variant {variant!r}; expected one of {KERNEL_VARIANTS}")


def pencil_product(a: int, b: int, i1: int, i2: int, n: int) -> int:
    """``int D_1^a D_2^b (eps^i1 ^ eps^i2)`` on G(2, n+2); 0 unless dimensions match."""
    if a < 0 or b < 0 or i1 < 1 or i2 < 1:
        return 0
    if a + 2 * b != 2 * n - (i1 + i2 - 3):
        return 0
    shape = Shape(2, n + 2)
    return sum(binomial(b, beta) * schubert_degree((i1 + beta, i2 + 2 * b - 2 * beta), shape)
               for beta in range(b + 1))


def scherbak(q: Sequence[int], n: int) -> int:
    """``int sigma_{q_1} ... sigma_{q_h}`` on G(2, n+2) by inclusion-exclusion."""
    q = list(q)
    h = len(q)
    if h == 0 or any(x < 0 for x in q) or sum(q) != 2 * n:
        return 0
    total = 0
    for size in range(h + 1):
        sign = -1 if (h + 1 - size) % 2 else 1
        for subset in itertools.combinations(q, size):
            total += sign * binomial(sum(subset) + size - n - 1, h - 2)
    return total


def net_balance(a: int, b: int, c: int, d: int) -> int:
    """Total ramification weight for flexes, hyperflexes, cusps, tacnodes."""
    return a + 2 * b + 2 * c + 3 * d


web_balance = net_balance  # stalls, hyperstalls, flexes, cusps carry the same weights


def _check_counts(*counts: int) -> None:
    if any(x < 0 for x in counts):
        raise ValueError(f"point counts must be non-negative, got {counts}")


def count_nets(a: int, b: int, c: int, d: int, n: int, *, strict: bool = False) -> int:
    """Rational plane curves of degree n+2 with a flexes, b hyperflexes,
    c cusps and d tacnodes at prescribed points.

    Returns 0 when a + 2b + 2c + 3d != 3n, or raises :class:`BalanceError`
    if ``strict``.
    """
    _check_counts(a, b, c, d, n)
    if net_balance(a, b, c, d) != 3 * n:
        if strict:
            raise BalanceError("nets need a + 2b + 2c + 3d = 3n", 3 * n, net_balance(a, b, c, d))
        return 0
    top = n + 3
    total = 0
    betas = [(beta, multinomial(b, beta)) for beta in compositions(4, b)]
    for dp in range(d + 1):
        # (D1 Dbar2 - Dbar3)^d: the term with Dbar3^(d - dp) carries (-1)^(d - dp)
        outer = (-1) ** (d - dp) * binomial(d, dp)
        shift = d - dp
        for gamma in compositions(3, c + dp):
            cg = outer * multinomial(c + dp, gamma)
            g1, g2, g3 = gamma
            for (b1, b2, b3, b4), cb in betas:
                w = _omega_raw((1 + shift + g2 + g3 + b1,
                                2 + shift + g1 + g3 + b2 + 2 * b4,
                                3 + shift + g1 + g2 + 2 * b3 + b2), top)
                if w:
                    total += cg * cb * w
    return total


def _parallel_sum(task: Callable[[int, int, tuple], int], args: tuple, workers: int) -> int:
    if workers <= 1:
        return task(0, 1, args)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task, w, workers, args) for w in range(workers)]
        return sum(f.result() for f in futures)


def _webs_task(worker: int, stride: int, args: tuple) -> int:
    a, b, c, d, n = args
    top = n + 4
    ensure_factorials(4 * top + b + c + d)
    total = 0
    deltas = [(delta, multinomial(d, delta)) for delta in compositions(4, d)]
    gammas = [(gamma, multinomial(c, gamma)) for gamma in compositions(4, c)]
    for beta in compositions(5, b):
        if beta[0] % stride != worker:
            continue
        cb = multinomial(b, beta)
        b1, b2, b3, b4, b5 = beta
        s = b2 + b3
        for (d1, d2, d3, d4), cd in deltas:
            for (g1, g2, g3, g4), cg in gammas:
                base = cb * cd * cg
                e1 = 1 + d - d1 + g1 + g4 + b1
                e2 = 2 + d - d2 + g2 + g4 + b2 + 2 * b5
                e3 = 3 + d - d3 + g3 + b3
                e4 = 4 + d - d4 + g1 + g2 + g3 + b2 + 2 * b4 + b3
                if e1 > top or e2 > top:
                    continue
                t = g1 + g2
                for l in range(s + 1):
                    cl = base * binomial(s, l)
                    for m in range(t + 1):
                        w = _omega_raw((e1, e2, e3 + l + m, e4 - l - m), top)
                        if w:
                            total += cl * binomial(t, m) * w
    return total


def count_webs(a: int, b: int, c: int, d: int, n: int, *, strict: bool = False,
               workers: int = 1) -> int:
    """Rational space curves with a stalls, b hyperstalls, c flexes and d
    cusps at prescribed points; 0 unless a + 2b + 2c + 3d = 4n."""
    _check_counts(a, b, c, d, n)
    if web_balance(a, b, c, d) != 4 * n:
        if strict:
            raise BalanceError("webs need a + 2b + 2c + 3d = 4n", 4 * n, web_balance(a, b, c, d))
        return 0
    return _parallel_sum(_webs_task, (a, b, c, d, n), workers)


def _hyperstalls_task(worker: int, stride: int, args: tuple) -> int:
    (n,) = args
    top = n + 4
    m = 2 * n
    ensure_factorials(4 * top + m)
    omega = _omega_sorted
    total = 0
    for b1 in range(worker, min(m, top - 1) + 1, stride):
        i1 = 1 + b1
        c1 = binomial(m, b1)
        r1 = m - b1
        for b2 in range(r1 + 1):
            c2 = c1 * binomial(r1, b2)
            r2 = r1 - b2
            for b3 in range(r2 + 1):
                c3 = c2 * binomial(r2, b3)
                r3 = r2 - b3
                s = b2 + b3
                lo3 = 3 + b3
                for b4 in range(r3 + 1):
                    b5 = r3 - b4
                    i2 = 2 + b2 + 2 * b5
                    if i2 > top:
                        continue
                    hi4 = 4 + s + 2 * b4
                    # i3 = lo3 + l rises, i4 = hi4 - l falls; both must stay <= top
                    l_lo = max(0, hi4 - top)
                    l_hi = min(s, top - lo3)
                    if l_lo > l_hi:
                        continue
                    inner = 0
                    for l in range(l_lo, l_hi + 1):
                        i3 = lo3 + l
                        i4 = hi4 - l
                        if i3 == i4 or i1 == i2 or i1 == i3 or i1 == i4 or i2 == i3 or i2 == i4:
                            continue
                        raw = (i1, i2, i3, i4)
                        srt = tuple(sorted(raw))
                        w = omega(srt, top)
                        if w:
                            if _parity4(raw):
                                w = -w
                            inner += binomial(s, l) * w
                    if inner:
                        total += c3 * binomial(r3, b4) * inner
    return total


def _parity4(raw: tuple[int, int, int, int]) -> bool:
    # True when sorting the (distinct) entries needs an odd permutation
    a, b, c, d = raw
    inv = (a > b) + (a > c) + (a > d) + (b > c) + (b > d) + (c > d)
    return bool(inv & 1)


def hyperstalls(n: int, *, workers: int = 1) -> int:
    """Rational space curves of degree n+3 with hyperstalls at 2n prescribed points."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _parallel_sum(_hyperstalls_task, (n,), workers)


def _ranestad_task(worker: int, stride: int, args: tuple) -> int:
    (n,) = args
    top = n + 4
    m = 2 * n
    ensure_factorials(4 * top + m)
    total = 0
    for g1 in range(worker, m + 1, stride):
        c1 = binomial(m, g1)
        r1 = m - g1
        for g2 in range(r1 + 1):
            c2 = c1 * binomial(r1, g2)
            r2 = r1 - g2
            t = g1 + g2
            for g3 in range(r2 + 1):
                g4 = r2 - g3
                coeff = c2 * binomial(r2, g3)
                i1 = 1 + g1 + g4
                i2 = 2 + g2 + g4
                if i1 > top or i2 > top:
                    continue
                lo3 = 3 + g3
                hi4 = 4 + t + g3
                inner = 0
                for mm in range(max(0, hi4 - top), min(t, top - lo3) + 1):
                    w = _omega_raw((i1, i2, lo3 + mm, hi4 - mm), top)
                    if w:
                        inner += binomial(t, mm) * w
                total += coeff * inner
    return total


def ranestad(n: int, *, workers: int = 1) -> int:
    """Rational space curves of degree n+3 with flexes at 2n prescribed points."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _parallel_sum(_ranestad_task, (n,), workers)


def clear_caches() -> None:
    _omega_sorted.cache_clear()
