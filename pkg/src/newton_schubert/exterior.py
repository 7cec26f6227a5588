"""Exterior powers of the truncated module M_n with the basis eps^1..eps^n.

Basis wedges eps^I are labelled by plain tuples of ints.  A tuple is
*canonical* for a shape (k, n) when it is strictly increasing with entries
in 1..n.  Non-canonical raw tuples are brought to canonical form by
:func:`normalize`, which tracks the sign of the sorting permutation and
drops wedges that vanish (repeated entries, or an entry beyond n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Shape",
    "Multivector",
    "normalize",
    "weight",
    "is_canonical",
    "index_tuples",
    "fundamental_index",
    "point_index",
    "degree_functional",
    "combine",
    "wedge",
    "accumulate",
    "prepend",
]


@dataclass(frozen=True, order=True)
class Shape:
    """Degree ``k`` of the exterior power and rank ``n`` of the module.

    ``k = 0`` is accepted (the scalars) because wedge factors of degree
    k - 1 show up in the recursive formulas; Grassmannian-level entry
    points require ``k >= 1`` themselves.
    """

    k: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.k, int) and isinstance(self.n, int)):
            raise TypeError("shape entries must be integers")
        if self.n < 1 or self.k < 0 or self.k > self.n:
            raise ValueError(f"invalid shape k={self.k}, n={self.n}: need 0 <= k <= n, n >= 1")

    @property
    def dimension(self) -> int:
        """Top weight k(n - k), the dimension of G(k, n)."""
        return self.k * (self.n - self.k)


def normalize(raw: Sequence[int], shape: Shape) -> tuple[tuple[int, ...], int] | None:
    """Sort ``raw`` into a canonical tuple and report the permutation sign.

    Returns ``None`` when the wedge is zero: an entry exceeds ``shape.n`` or
    two entries coincide.
    """
    n = shape.n
    for i in raw:
        if i > n or i < 1:
            return None
    entries = list(raw)
    sign = 1
    # insertion sort; k is tiny and we need the parity anyway
    for a in range(1, len(entries)):
        x = entries[a]
        b = a - 1
        while b >= 0 and entries[b] > x:
            entries[b + 1] = entries[b]
            b -= 1
            sign = -sign
        if b >= 0 and entries[b] == x:
            return None
        entries[b + 1] = x
    return tuple(entries), sign


def _sort_sign(raw: Sequence[int], n: int) -> tuple[tuple[int, ...], int] | None:
    # hot-path twin of normalize() that takes n directly
    for i in raw:
        if i > n:
            return None
    entries = list(raw)
    sign = 1
    for a in range(1, len(entries)):
        x = entries[a]
        b = a - 1
        while b >= 0 and entries[b] > x:
            entries[b + 1] = entries[b]
            b -= 1
            sign = -sign
        if b >= 0 and entries[b] == x:
            return None
        entries[b + 1] = x
    return tuple(entries), sign


def is_canonical(index: Sequence[int], shape: Shape) -> bool:
    if len(index) != shape.k:
        return False
    prev = 0
    for i in index:
        if i <= prev or i > shape.n:
            return False
        prev = i
    return True


def weight(index: Sequence[int]) -> int:
    """``sum_j (i_j - j)`` for a 1-based tuple."""
    return sum(index) - len(index) * (len(index) + 1) // 2


def index_tuples(shape: Shape, wt: int | None = None) -> Iterator[tuple[int, ...]]:
    """Canonical tuples of the shape in lexicographic order, optionally of one weight."""
    from itertools import combinations

    for index in combinations(range(1, shape.n + 1), shape.k):
        if wt is None or weight(index) == wt:
            yield index


def fundamental_index(shape: Shape) -> tuple[int, ...]:
    return tuple(range(1, shape.k + 1))


def point_index(shape: Shape) -> tuple[int, ...]:
    return tuple(range(shape.n - shape.k + 1, shape.n + 1))


def accumulate(target: dict, key, value: int) -> None:
    """Add ``value`` at ``key`` in a sparse dict, deleting the entry if it cancels."""
    new = target.get(key, 0) + value
    if new:
        target[key] = new
    else:
        target.pop(key, None)


class Multivector:
    """Sparse element of the k-th exterior power of M_n.

    ``terms`` maps canonical tuples to nonzero integer coefficients.  Treat
    instances as immutable; every operation returns a new object.
    """

    __slots__ = ("shape", "terms")

    def __init__(self, shape: Shape, terms: Mapping[tuple[int, ...], int] | None = None,
                 *, check: bool = True):
        self.shape = shape
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            if check:
                for index, coeff in terms.items():
                    if not is_canonical(index, shape):
                        raise ValueError(f"{index} is not a canonical index for {shape}")
                    if coeff:
                        clean[index] = int(coeff)
            else:
                clean = {index: coeff for index, coeff in terms.items() if coeff}
        self.terms = clean

    @classmethod
    def zero(cls, shape: Shape) -> "Multivector":
        return cls(shape)

    @classmethod
    def basis(cls, shape: Shape, raw: Sequence[int], coeff: int = 1) -> "Multivector":
        """``coeff * eps^raw``, normalized (possibly to zero)."""
        if len(raw) != shape.k:
            raise ValueError(f"wedge of length {len(raw)} does not live in degree {shape.k}")
        norm = normalize(raw, shape)
        if norm is None or not coeff:
            return cls(shape)
        index, sign = norm
        return cls(shape, {index: sign * coeff}, check=False)

    @classmethod
    def fundamental(cls, shape: Shape) -> "Multivector":
        return cls(shape, {fundamental_index(shape): 1}, check=False)

    @classmethod
    def point(cls, shape: Shape) -> "Multivector":
        return cls(shape, {point_index(shape): 1}, check=False)

    @classmethod
    def from_raw_terms(cls, shape: Shape, items: Iterable[tuple[Sequence[int], int]]) -> "Multivector":
        """Sum of ``coeff * eps^raw`` over raw (unsorted, possibly vanishing) tuples."""
        out: dict[tuple[int, ...], int] = {}
        n = shape.n
        for raw, coeff in items:
            norm = _sort_sign(raw, n)
            if norm is not None:
                accumulate(out, norm[0], norm[1] * coeff)
        return cls(shape, out, check=False)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in lexicographic order of the index tuple."""
        return sorted(self.terms.items())

    def coefficient(self, index: Sequence[int]) -> int:
        return self.terms.get(tuple(index), 0)

    def weights(self) -> set[int]:
        return {weight(index) for index in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.shape == other.shape and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.shape, frozenset(self.terms.items())))

    def __add__(self, other: "Multivector") -> "Multivector":
        return combine(self, other, 1, 1)

    def __sub__(self, other: "Multivector") -> "Multivector":
        return combine(self, other, 1, -1)

    def __neg__(self) -> "Multivector":
        return Multivector(self.shape, {i: -c for i, c in self.terms.items()}, check=False)

    def __mul__(self, scalar: int) -> "Multivector":
        if not isinstance(scalar, int):
            return NotImplemented
        return Multivector(self.shape, {i: scalar * c for i, c in self.terms.items()}, check=False)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " ".join(
            f"{coeff:+d} e[{','.join(map(str, index))}]" for index, coeff in self.items()
        )

    def __repr__(self) -> str:
        return f"Multivector({self.shape.k}, {self.shape.n}: {self})"

    @classmethod
    def parse(cls, shape: Shape, text: str) -> "Multivector":
        """Inverse of ``str()``: reads ``+2 e[1,3] -1 e[2,4]``."""
        import re

        text = text.strip()
        if text == "0":
            return cls(shape)
        pattern = re.compile(r"\s*([+-]\d+)\s+e\[([\d,]*)\]")
        terms: dict[tuple[int, ...], int] = {}
        pos = 0
        while pos < len(text):
            match = pattern.match(text, pos)
            if match is None:
                raise ValueError(f"cannot parse multivector at offset {pos}: {text[pos:]!r}")
            entries = tuple(int(x) for x in match.group(2).split(",") if x)
            accumulate(terms, entries, int(match.group(1)))
            pos = match.end()
        return cls(shape, terms)


def degree_functional(v: Multivector) -> int:
    """Coefficient of the point element; every other basis wedge integrates to 0."""
    return v.terms.get(point_index(v.shape), 0)


def combine(a: Multivector, b: Multivector, ca: int = 1, cb: int = 1) -> Multivector:
    """``ca * a + cb * b``."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    out = {index: ca * coeff for index, coeff in a.terms.items()} if ca else {}
    if cb:
        for index, coeff in b.terms.items():
            accumulate(out, index, cb * coeff)
    return Multivector(a.shape, out, check=False)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product of two multivectors over the same M_n, term by term."""
    if a.shape.n != b.shape.n:
        raise ValueError("wedge factors must live over the same module M_n")
    n = a.shape.n
    if a.shape.k + b.shape.k > n:
        raise ValueError(f"degree {a.shape.k + b.shape.k} exceeds rank {n}")
    shape = Shape(a.shape.k + b.shape.k, n)
    out: dict[tuple[int, ...], int] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            norm = _sort_sign(ia + ib, n)
            if norm is not None:
                accumulate(out, norm[0], norm[1] * ca * cb)
    return Multivector(shape, out, check=False)


def prepend(i: int, v: Multivector) -> Multivector:
    """``eps^i ^ v`` for a single basis vector ``eps^i``."""
    n = v.shape.n
    shape = Shape(v.shape.k + 1, n)
    if i > n:
        return Multivector(shape)
    out: dict[tuple[int, ...], int] = {}
    for index, coeff in v.terms.items():
        norm = _sort_sign((i,) + index, n)
        if norm is not None:
            accumulate(out, norm[0], norm[1] * coeff)
    return Multivector(shape, out, check=False)
