"""Operators on the exterior powers: D_h, the inverse-series operators
Dbar_h, Schur determinants in the D's, and operator words built from them.

``apply_word`` followed by ``degree_functional`` is the brute-force
evaluator every closed form in the package is checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .bigcomb import compositions
from .exterior import (
    Multivector,
    Shape,
    _sort_sign,
    accumulate,
    degree_functional,
    is_canonical,
    weight,
)

__all__ = [
    "apply_D",
    "apply_Dbar",
    "DPolynomial",
    "schur_operator",
    "dbar_polynomial",
    "Factor",
    "OperatorWord",
    "apply_polynomial",
    "apply_word",
    "integral_of_word",
    "D",
    "Dbar",
    "Schur",
    "apply_monomial",
    "basis_wedge",
]


@lru_cache(maxsize=None)
def _leibniz_shifts(h: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(compositions(k, h)) if k else ((),) if h == 0 else ()


@lru_cache(maxsize=None)
def _dbar_shifts(h: int, k: int) -> tuple[tuple[int, ...], ...]:
    # Dbar_j eps^i vanishes for j >= 2, so only 0/1 shift vectors survive
    if h > k:
        return ()
    shifts = []
    for chosen in itertools.combinations(range(k), h):
        vec = [0] * k
        for pos in chosen:
            vec[pos] = 1
        shifts.append(tuple(vec))
    return tuple(sorted(shifts))


def _apply_shifts(shifts: Sequence[tuple[int, ...]], v: Multivector) -> Multivector:
    n = v.shape.n
    out: dict[tuple[int, ...], int] = {}
    for index, coeff in v.terms.items():
        for shift in shifts:
            norm = _sort_sign([i + s for i, s in zip(index, shift)], n)
            if norm is not None:
                accumulate(out, norm[0], norm[1] * coeff)
    return Multivector(v.shape, out, check=False)


def apply_D(h: int, v: Multivector) -> Multivector:
    """D_h via the closed Leibniz expansion over weak compositions of h."""
    if h < 0:
        return Multivector(v.shape)
    if h == 0:
        return v
    return _apply_shifts(_leibniz_shifts(h, v.shape.k), v)


def apply_Dbar(h: int, v: Multivector) -> Multivector:
    """Dbar_h: on a k-wedge, raise h distinct entries by one (zero if h > k)."""
    if h < 0:
        return Multivector(v.shape)
    if h == 0:
        return v
    return _apply_shifts(_dbar_shifts(h, v.shape.k), v)


Monomial = tuple[tuple[int, int], ...]  # sorted ((h, exponent), ...), h >= 1


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for h, e in b:
        exps[h] = exps.get(h, 0) + e
    return tuple(sorted(exps.items()))


class DPolynomial:
    """Integer polynomial in the commuting operators D_1, D_2, ...

    Stored as ``{monomial: coefficient}`` where a monomial is a sorted tuple
    of ``(h, exponent)`` pairs and the empty tuple is the identity.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> "DPolynomial":
        return cls({(): 1})

    @classmethod
    def D(cls, h: int, exponent: int = 1) -> "DPolynomial":
        if h < 0:
            return cls()
        if h == 0 or exponent == 0:
            return cls.one()
        return cls({((h, exponent),): 1})

    def __mul__(self, other: "DPolynomial") -> "DPolynomial":
        out: dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                accumulate(out, _mono_mul(ma, mb), ca * cb)
        return DPolynomial(out)

    def __add__(self, other: "DPolynomial") -> "DPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            accumulate(out, m, c)
        return DPolynomial(out)

    def __neg__(self) -> "DPolynomial":
        return DPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "DPolynomial") -> "DPolynomial":
        return self + (-other)

    def __pow__(self, e: int) -> "DPolynomial":
        result = DPolynomial.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def degrees(self) -> set[int]:
        return {sum(h * e for h, e in m) for m in self.terms}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in sorted(self.terms.items()):
            body = "*".join(f"D{h}" + (f"^{e}" if e > 1 else "") for h, e in mono) or "1"
            parts.append(f"{coeff:+d} {body}")
        return " ".join(parts)

    __repr__ = __str__


@lru_cache(maxsize=None)
def _schur_cached(index: tuple[int, ...]) -> DPolynomial:
    k = len(index)
    total: dict[Monomial, int] = {}
    # Leibniz expansion of det(D_{i_c - r}) with rows r and columns c 1-based
    for perm in itertools.permutations(range(k)):
        mono: Monomial = ()
        for r, c in enumerate(perm, start=1):
            sub = index[c] - r
            if sub < 0:
                break
            if sub > 0:
                mono = _mono_mul(mono, ((sub, 1),))
        else:
            sign = _perm_sign(perm)
            accumulate(total, mono, sign)
    return DPolynomial(total)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def schur_operator(index: Sequence[int]) -> DPolynomial:
    """Schur determinant of a strictly increasing tuple as a polynomial in D.

    The k x k matrix has entry D_{i_c - r} in row r, column c, with D_0 = 1
    and D_j = 0 for j < 0.  The result is homogeneous of degree wt(index).
    """
    index = tuple(index)
    if any(b <= a for a, b in zip(index, index[1:])) or (index and index[0] < 1):
        raise ValueError(f"Schur index must be strictly increasing and positive: {index}")
    return _schur_cached(index)


def dbar_polynomial(h: int) -> DPolynomial:
    """Dbar_h written in the D's, as the Schur determinant of (2, ..., h+1)."""
    if h == 0:
        return DPolynomial.one()
    return schur_operator(tuple(range(2, h + 2)))


@dataclass(frozen=True)
class Factor:
    """One factor ``F^exponent`` of an operator word.

    ``kind`` is ``"D"`` or ``"Dbar"`` with an integer ``param``, or
    ``"Schur"`` with a strictly increasing tuple ``param``.
    """

    kind: str
    param: Union[int, tuple[int, ...]]
    exponent: int = 1

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise ValueError("exponents must be non-negative")
        if self.kind in ("D", "Dbar"):
            if not isinstance(self.param, int) or self.param < 0:
                raise ValueError(f"{self.kind} needs a non-negative integer parameter")
        elif self.kind == "Schur":
            param = tuple(self.param)
            object.__setattr__(self, "param", param)
            schur_operator(param)  # validates
        else:
            raise ValueError(f"unknown factor kind {self.kind!r}")

    @property
    def degree(self) -> int:
        if self.kind == "Schur":
            base = weight(self.param)
        else:
            base = self.param
        return base * self.exponent

    def polynomial(self) -> DPolynomial:
        if self.kind == "D":
            return DPolynomial.D(self.param, self.exponent)
        if self.kind == "Dbar":
            return dbar_polynomial(self.param) ** self.exponent
        return schur_operator(self.param) ** self.exponent

    def __str__(self) -> str:
        if self.kind == "Schur":
            body = "S[" + ",".join(map(str, self.param)) + "]"
        else:
            body = f"{self.kind}{self.param}"
        return body if self.exponent == 1 else f"{body}^{self.exponent}"


@dataclass(frozen=True)
class OperatorWord:
    """Product of factors, applied right to left."""

    factors: tuple[Factor, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))

    @classmethod
    def of(cls, *factors: Factor) -> "OperatorWord":
        return cls(tuple(factors))

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    def polynomial(self) -> DPolynomial:
        result = DPolynomial.one()
        for f in self.factors:
            result = result * f.polynomial()
        return result

    def __mul__(self, other: "OperatorWord") -> "OperatorWord":
        return OperatorWord(self.factors + other.factors)

    def __str__(self) -> str:
        return " * ".join(map(str, self.factors)) or "1"


def D(h: int, exponent: int = 1) -> Factor:
    return Factor("D", h, exponent)


def Dbar(h: int, exponent: int = 1) -> Factor:
    return Factor("Dbar", h, exponent)


def Schur(index: Iterable[int], exponent: int = 1) -> Factor:
    return Factor("Schur", tuple(index), exponent)


def apply_monomial(mono: Monomial, v: Multivector) -> Multivector:
    for h, e in mono:
        for _ in range(e):
            v = apply_D(h, v)
            if not v:
                return v
    return v


def apply_polynomial(poly: DPolynomial, v: Multivector) -> Multivector:
    out: dict[tuple[int, ...], int] = {}
    for mono, coeff in poly.terms.items():
        for index, c in apply_monomial(mono, v).terms.items():
            accumulate(out, index, coeff * c)
    return Multivector(v.shape, out, check=False)


def apply_word(word: OperatorWord, v: Multivector) -> Multivector:
    """Apply the factors right to left; Schur factors go through their D-expansion."""
    for f in reversed(word.factors):
        if f.kind == "D":
            for _ in range(f.exponent):
                v = apply_D(f.param, v)
        elif f.kind == "Dbar":
            for _ in range(f.exponent):
                v = apply_Dbar(f.param, v)
        else:
            poly = schur_operator(f.param)
            for _ in range(f.exponent):
                v = apply_polynomial(poly, v)
        if not v:
            break
    return v


def integral_of_word(shape: Shape, word: OperatorWord) -> int:
    """Degree of ``word`` applied to the fundamental element (brute force)."""
    if shape.k < 1:
        raise ValueError("integration needs k >= 1")
    return degree_functional(apply_word(word, Multivector.fundamental(shape)))


def basis_wedge(shape: Shape, index: Sequence[int]) -> Multivector:
    if not is_canonical(index, shape):
        raise ValueError(f"{tuple(index)} is not canonical for {shape}")
    return Multivector(shape, {tuple(index): 1}, check=False)
