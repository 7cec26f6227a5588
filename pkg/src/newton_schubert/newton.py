"""Newton binomial reduction.

Any polynomial in the D's applied to a basis wedge eps^I is rewritten as a
combination ``sum a_{j,J} D_1^j eps^J``.  The binomial rule for D_h^m on
``eps^i ^ p`` peels off the first wedge factor and lowers h by one; at
h = 1 the term is already in normal form.  Integrating the normal form only
needs the Schubert-variety degrees, which have a closed form.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .bigcomb import binomial, multinomial
from .derivations import DPolynomial, OperatorWord, apply_D, apply_Dbar
from .exterior import (
    Multivector,
    Shape,
    _sort_sign,
    accumulate,
    is_canonical,
    prepend,
    weight,
)

__all__ = [
    "ReducedForm",
    "newton_D",
    "newton_Dbar",
    "reduce_power",
    "reduce_polynomial",
    "reduce_word",
    "expand_reduced",
    "integrate_reduced",
    "d1_power",
]

Key = tuple[int, tuple[int, ...]]


class ReducedForm:
    """``sum a_{j,J} D_1^j eps^J`` inside the k-th exterior power of M_n."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: Shape, terms: dict[Key, int] | None = None, *, check: bool = True):
        self.shape = shape
        self.terms = {key: c for key, c in (terms or {}).items() if c}
        if check:
            for j, index in self.terms:
                if j < 0 or not is_canonical(index, shape):
                    raise ValueError(f"bad reduced-form key {(j, index)} for {shape}")

    def degrees(self) -> set[int]:
        """Values of j + wt(J) over stored terms; a homogeneous form has one."""
        return {j + weight(index) for j, index in self.terms}

    def items(self) -> list[tuple[Key, int]]:
        return sorted(self.terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedForm):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "\n".join(
            f"{c} * D1^{j} e[{','.join(map(str, index))}]" for (j, index), c in self.items()
        )

    def __repr__(self) -> str:
        return f"ReducedForm({self.shape.k}, {self.shape.n}, {len(self.terms)} terms)"


def newton_D(h: int, m: int, i: int, p: Multivector) -> Multivector:
    """``D_h^m(eps^i ^ p) = sum_j C(m, j) D_{h-1}^j(eps^{i+j} ^ D_h^{m-j} p)``."""
    out = Multivector(Shape(p.shape.k + 1, p.shape.n))
    powers = [p]
    for _ in range(m):
        powers.append(apply_D(h, powers[-1]))
    for j in range(m + 1):
        term = prepend(i + j, powers[m - j])
        for _ in range(j):
            term = apply_D(h - 1, term)
        out = out + binomial(m, j) * term
    return out


def newton_Dbar(h: int, m: int, i: int, p: Multivector) -> Multivector:
    """``Dbar_h^m(eps^i ^ p) = sum_j C(m, j) eps^{i+j} ^ Dbar_{h-1}^j Dbar_h^{m-j} p``."""
    out = Multivector(Shape(p.shape.k + 1, p.shape.n))
    for j in range(m + 1):
        inner = p
        for _ in range(m - j):
            inner = apply_Dbar(h, inner)
        for _ in range(j):
            inner = apply_Dbar(h - 1, inner)
        out = out + binomial(m, j) * prepend(i + j, inner)
    return out


def _bounded_shifts(index: tuple[int, ...], total: int, n: int):
    # weak compositions of `total` with part p <= n - index[p]; others vanish anyway
    k = len(index)
    if k == 0:
        if total == 0:
            yield ()
        return
    room = [n - i for i in index]
    suffix = [0] * (k + 1)
    for p in range(k - 1, -1, -1):
        suffix[p] = suffix[p + 1] + room[p]
    if total > suffix[0]:
        return
    parts = [0] * k

    def rec(p: int, left: int):
        if p == k - 1:
            if left <= room[p]:
                parts[p] = left
                yield tuple(parts)
            return
        lo = max(0, left - suffix[p + 1])
        for x in range(lo, min(left, room[p]) + 1):
            parts[p] = x
            yield from rec(p + 1, left - x)

    yield from rec(0, total)


@lru_cache(maxsize=None)
def _d1_power(j: int, index: tuple[int, ...], n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out: dict[tuple[int, ...], int] = {}
    for mu in _bounded_shifts(index, j, n):
        norm = _sort_sign([i + s for i, s in zip(index, mu)], n)
        if norm is not None:
            accumulate(out, norm[0], norm[1] * multinomial(j, mu))
    return tuple(out.items())


def d1_power(j: int, index: Sequence[int], shape: Shape) -> Multivector:
    """``D_1^j eps^I`` in one shot via the multinomial expansion."""
    return Multivector(shape, dict(_d1_power(j, tuple(index), shape.n)), check=False)


@lru_cache(maxsize=None)
def _power_expanded(h: int, m: int, index: tuple[int, ...], n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    # D_h^m eps^index as plain wedges, through the reduced form
    out: dict[tuple[int, ...], int] = {}
    for (j, J), a in _reduce_power(h, m, index, n):
        for K, c in _d1_power(j, J, n):
            accumulate(out, K, a * c)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _reduce_power(h: int, m: int, index: tuple[int, ...], n: int) -> tuple[tuple[Key, int], ...]:
    if m == 0 or h == 0:
        return (((0, index), 1),)
    if h == 1:
        return (((m, index), 1),)
    k = len(index)
    if k == 1:
        top = index[0] + h * m
        return (((0, (top,)), 1),) if top <= n else ()
    first, rest = index[0], index[1:]
    out: dict[Key, int] = {}
    for j in range(m + 1):
        if first + j > n:
            break
        cj = binomial(m, j)
        for tail, c in _power_expanded(h, m - j, rest, n):
            norm = _sort_sign((first + j,) + tail, n)
            if norm is None:
                continue
            J, sign = norm
            scale = cj * c * sign
            for key, a in _reduce_power(h - 1, j, J, n):
                accumulate(out, key, scale * a)
    return tuple(out.items())


def reduce_power(h: int, m: int, index: Sequence[int], shape: Shape) -> ReducedForm:
    """Normal form of ``D_h^m eps^I``: every term has j + wt(J) = wt(I) + h m."""
    index = tuple(index)
    if not is_canonical(index, shape):
        raise ValueError(f"{index} is not canonical for {shape}")
    if h < 0:
        return ReducedForm(shape)
    return ReducedForm(shape, dict(_reduce_power(h, m, index, shape.n)), check=False)


def _apply_monomial_reduced(mono, form: dict[Key, int], n: int) -> dict[Key, int]:
    # D_1^j commutes with every D_h, so each factor acts on the eps^J part only
    for h, e in mono:
        nxt: dict[Key, int] = {}
        for (j, J), a in form.items():
            for (j2, K), c in _reduce_power(h, e, J, n):
                accumulate(nxt, (j + j2, K), a * c)
        form = nxt
        if not form:
            break
    return form


def reduce_polynomial(poly: DPolynomial, index: Sequence[int], shape: Shape) -> ReducedForm:
    index = tuple(index)
    if not is_canonical(index, shape):
        raise ValueError(f"{index} is not canonical for {shape}")
    out: dict[Key, int] = {}
    for mono, coeff in sorted(poly.terms.items()):
        for key, a in _apply_monomial_reduced(mono, {(0, index): 1}, shape.n).items():
            accumulate(out, key, coeff * a)
    return ReducedForm(shape, out, check=False)


def reduce_word(word: OperatorWord, index: Sequence[int], shape: Shape) -> ReducedForm:
    """Normal form of ``word`` applied to ``eps^I``.

    Dbar and Schur factors are first rewritten as polynomials in the D's.
    """
    return reduce_polynomial(word.polynomial(), index, shape)


def expand_reduced(form: ReducedForm) -> Multivector:
    n = form.shape.n
    out: dict[tuple[int, ...], int] = {}
    for (j, J), a in form.terms.items():
        for K, c in _d1_power(j, J, n):
            accumulate(out, K, a * c)
    return Multivector(form.shape, out, check=False)


def integrate_reduced(form: ReducedForm) -> int:
    """Pair the normal form with Schubert-variety degrees.

    Only terms with j + wt(J) = k(n - k) integrate to something nonzero;
    for those, the integral of D_1^j eps^J is the degree of Omega_J.
    """
    from .enumerative import schubert_degree

    top = form.shape.dimension
    total = 0
    for (j, J), a in form.terms.items():
        if j + weight(J) == top:
            total += a * schubert_degree(J, form.shape)
    return total


def clear_caches() -> None:
    _d1_power.cache_clear()
    _power_expanded.cache_clear()
    _reduce_power.cache_clear()
