"""Parser for monomials in Schubert cycles.

Grammar::

    expr    := factor (("*" | whitespace) factor)*
    factor  := cycle ("^" uint)?
    cycle   := "s" uint | "s[" uint ("," uint)* "]"

``s3`` is the special cycle sigma_3 and ``s[1,3,5]`` the Schur cycle of a
strictly increasing index tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .derivations import D, OperatorWord, Schur

__all__ = ["ParseError", "CycleFactor", "CycleExpression", "parse_cycle", "MAX_EXPONENT"]

MAX_EXPONENT = 10_000


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset where parsing stopped."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.reason = message
        self.offset = offset


@dataclass(frozen=True)
class CycleFactor:
    cycle: Union[int, tuple[int, ...]]
    exponent: int = 1

    @property
    def is_special(self) -> bool:
        return isinstance(self.cycle, int)

    def __str__(self) -> str:
        body = f"s{self.cycle}" if self.is_special else "s[" + ",".join(map(str, self.cycle)) + "]"
        return body if self.exponent == 1 else f"{body}^{self.exponent}"


@dataclass(frozen=True)
class CycleExpression:
    factors: tuple[CycleFactor, ...]

    def __str__(self) -> str:
        return " * ".join(map(str, self.factors))

    def to_word(self) -> OperatorWord:
        """The operator word obtained by sending sigma_i to D_i."""
        return OperatorWord(tuple(
            D(f.cycle, f.exponent) if f.is_special else Schur(f.cycle, f.exponent)
            for f in self.factors
        ))

    @property
    def degree(self) -> int:
        return self.to_word().degree


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> bool:
        start = self.pos
        while self.peek().isspace():
            self.pos += 1
        return self.pos > start

    def uint(self, what: str) -> int:
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
        if start == self.pos:
            raise ParseError(f"expected {what}", start)
        return int(self.text[start:self.pos])

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ParseError(f"expected {char!r}, found {found}", self.pos)
        self.pos += 1


def _factor(reader: _Reader) -> CycleFactor:
    reader.expect("s")
    if reader.peek() == "[":
        bracket = reader.pos
        reader.pos += 1
        entries = [reader.uint("index entry")]
        while reader.peek() == ",":
            reader.pos += 1
            entries.append(reader.uint("index entry"))
        reader.expect("]")
        if entries[0] < 1:
            raise ParseError("Schur index entries must be positive", bracket)
        if any(b <= a for a, b in zip(entries, entries[1:])):
            raise ParseError("Schur index must be strictly increasing", bracket)
        cycle: Union[int, tuple[int, ...]] = tuple(entries)
    else:
        cycle = reader.uint("cycle index")
    exponent = 1
    if reader.peek() == "^":
        reader.pos += 1
        start = reader.pos
        exponent = reader.uint("exponent")
        if exponent > MAX_EXPONENT:
            raise ParseError(f"exponent {exponent} exceeds {MAX_EXPONENT}", start)
    return CycleFactor(cycle, exponent)


def parse_cycle(text: str) -> CycleExpression:
    try:
        return _parse(text)
    except ParseError as err:
        # the reader counts characters; report bytes of the UTF-8 input
        raise ParseError(err.reason, len(text[:err.offset].encode("utf-8"))) from None


def _parse(text: str) -> CycleExpression:
    reader = _Reader(text)
    reader.skip_ws()
    if not reader.peek():
        raise ParseError("empty expression", reader.pos)
    factors = [_factor(reader)]
    while True:
        spaced = reader.skip_ws()
        if not reader.peek():
            break
        if reader.peek() == "*":
            reader.pos += 1
            reader.skip_ws()
        elif not spaced:
            raise ParseError(f"expected '*' or whitespace, found {reader.peek()!r}", reader.pos)
        factors.append(_factor(reader))
    return CycleExpression(tuple(factors))
