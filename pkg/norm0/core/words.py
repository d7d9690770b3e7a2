"""Words in named generators.

Grammar (whitespace or ``*`` separates factors)::

    word  := item*
    item  := atom ('^' int)?
    atom  := NAME | '(' word ')'

``k`` is any nonzero integer; a negative exponent inverts.  ``1`` alone is the empty word.
Groups are expanded on parse, so a :class:`Word` is a flat, freely reduced sequence of
(name, exponent) letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import WordParseError

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)|(?P<sym>[()^*]))")


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _reduce(self.letters))

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __len__(self) -> int:
        return sum(abs(k) for _, k in self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def inverse(self) -> "Word":
        return Word(tuple((name, -k) for name, k in reversed(self.letters)))

    def append(self, name: str, k: int = 1) -> "Word":
        return Word(self.letters + ((name, k),))

    def names(self) -> set[str]:
        return {name for name, _ in self.letters}

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(name if k == 1 else f"{name}^{k}" for name, k in self.letters)

    @classmethod
    def of(cls, *names: str) -> "Word":
        return cls(tuple((n, 1) for n in names))


def _reduce(letters: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    out: list[tuple[str, int]] = []
    for name, k in letters:
        if k == 0:
            continue
        if out and out[-1][0] == name:
            merged = out[-1][1] + k
            out.pop()
            if merged:
                out.append((name, merged))
        else:
            out.append((name, k))
    return tuple(out)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        hit = _TOKEN.match(text, pos)
        if hit is None or hit.end() == pos:
            raise WordParseError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        kind = hit.lastgroup or ""
        tokens.append((kind, hit.group(kind)))
        pos = hit.end()
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = [t for t in _tokenize(text) if t != ("sym", "*")]
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise WordParseError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def word(self, *, nested: bool) -> Word:
        out = Word()
        while True:
            tok = self.peek()
            if tok is None:
                if nested:
                    raise WordParseError(f"missing ')' in {self.text!r}")
                return out
            if tok == ("sym", ")"):
                if not nested:
                    raise WordParseError(f"unbalanced ')' in {self.text!r}")
                return out
            out = out * self.item()

    def item(self) -> Word:
        kind, value = self.take()
        if kind == "name":
            atom = Word(((value, 1),))
        elif (kind, value) == ("sym", "("):
            atom = self.word(nested=True)
            self.take()
        else:
            raise WordParseError(f"unexpected token {value!r} in {self.text!r}")
        if self.peek() == ("sym", "^"):
            self.take()
            kind, value = self.take()
            if kind != "int":
                raise WordParseError(f"exponent must be an integer, got {value!r} in {self.text!r}")
            k = int(value)
            if k == 0:
                raise WordParseError(f"exponent 0 is not allowed in {self.text!r}")
            atom = atom**k
        return atom


def parse_word(text: str) -> Word:
    """Parse ``"(w16 S4)^3"``-style strings."""
    stripped = str(text).strip()
    if stripped in ("", "1"):
        return Word()
    return _Parser(stripped).word(nested=False)


def commutator(x: Word, y: Word) -> Word:
    """x y x^-1 y^-1: the identity iff x and y commute."""
    return x * y * x.inverse() * y.inverse()
