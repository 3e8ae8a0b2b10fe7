"""Free-group words and the word grammar.

Grammar (whitespace is insignificant)::

    word   := factor*
    factor := atom ('^' int)?
    atom   := generator | '[' word ',' word ']' | '(' word ')'

``[u,v]`` expands to ``u v u^-1 v^-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError

Letter = tuple[str, int]


@dataclass(frozen=True)
class Word:
    """A word as a sequence of ``(generator, exponent)`` syllables, not necessarily reduced."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, e in self.letters:
            if not isinstance(g, str) or not isinstance(e, int) or e == 0:
                raise ValueError(f"bad syllable {(g, e)!r}")

    @classmethod
    def of(cls, *items: str | Letter) -> "Word":
        letters = []
        for it in items:
            letters.append((it, 1) if isinstance(it, str) else (it[0], int(it[1])))
        return cls(tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n >= 0:
            return Word(self.letters * n)
        return Word(self.inverse().letters * (-n))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def reduced(self) -> "Word":
        out: list[list] = []
        for g, e in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([g, e])
        return Word(tuple((g, e) for g, e in out))

    def is_trivial(self) -> bool:
        return not self.reduced().letters

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w.letters)


_IDENT = re.compile(r"[A-Za-z][0-9_]*")


class _WordParser:
    def __init__(self, text: str, names: Sequence[str] | None, line: int, col0: int):
        self.text = text
        self.pos = 0
        # longest match first so that x10 wins over x1
        self.names = sorted(names, key=len, reverse=True) if names is not None else None
        self.line = line
        self.col0 = col0

    def error(self, msg: str, expected: Iterable[str] = ()):
        raise ParseError(msg, self.line, self.col0 + self.pos, expected)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"unexpected {self.peek()!r}" if self.peek() else "unexpected end of input", [repr(ch)])
        self.pos += 1

    def word(self, stop: str) -> Word:
        letters: list[Letter] = []
        while True:
            c = self.peek()
            if c == "" or c in stop:
                return Word(tuple(letters))
            letters.extend(self.factor().letters)

    def factor(self) -> Word:
        w = self.atom()
        if self.peek() == "^":
            self.pos += 1
            w = w ** self.integer()
        return w

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer exponent", ["integer"])
        self.pos = m.end()
        return int(m.group())

    def atom(self) -> Word:
        c = self.peek()
        if c == "[":
            self.pos += 1
            u = self.word(",]")
            self.expect(",")
            v = self.word(",]")
            self.expect("]")
            return commutator(u, v)
        if c == "(":
            self.pos += 1
            u = self.word(")")
            self.expect(")")
            return u
        if self.names is not None:
            for name in self.names:
                if self.text.startswith(name, self.pos):
                    self.pos += len(name)
                    return Word(((name, 1),))
            self.error(f"unknown generator at {self.text[self.pos:self.pos + 8]!r}", sorted(self.names) + ["[", "("])
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error(f"unexpected {c!r}", ["generator", "[", "("])
        self.pos = m.end()
        return Word(((m.group(), 1),))


def parse_word(text: str, names: Sequence[str] | None = None, *, line: int = 1, column: int = 1) -> Word:
    """Parse a single word.  With ``names`` given, generators are matched against that alphabet."""
    parser = _WordParser(text, names, line, column)
    w = parser.word("")
    return w


def split_top_level(text: str, sep: str = ",") -> list[tuple[int, str]]:
    """Split at separators outside brackets/parentheses; returns (offset, piece) pairs."""
    pieces = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == sep and depth == 0:
            pieces.append((start, text[start:i]))
            start = i + 1
    pieces.append((start, text[start:]))
    return pieces
