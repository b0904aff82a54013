"""Rational expressions over ``{a, A}``.

Grammar (whitespace ignored)::

    expr   := term ('|' term)*
    term   := factor+
    factor := atom '*'*
    atom   := 'a' | 'A' | '1' | '(' expr ')'

Adjacent letters are merged into a single :class:`Literal`.
"""

from __future__ import annotations

from dataclasses import dataclass

from fimtool.errors import ParseError


class RatExpr:
    def __or__(self, other: RatExpr) -> RatExpr:
        return Union((self, other))

    def __add__(self, other: RatExpr) -> RatExpr:
        return Concat((self, other))

    def star(self) -> RatExpr:
        return Star(self)


@dataclass(frozen=True)
class Literal(RatExpr):
    word: str

    def __str__(self) -> str:
        return self.word or "1"


@dataclass(frozen=True)
class Union(RatExpr):
    parts: tuple[RatExpr, ...]

    def __str__(self) -> str:
        return "|".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class Concat(RatExpr):
    parts: tuple[RatExpr, ...]

    def __str__(self) -> str:
        return "".join(f"({p})" if isinstance(p, Union) else str(p) for p in self.parts)


@dataclass(frozen=True)
class Star(RatExpr):
    inner: RatExpr

    def __str__(self) -> str:
        inner = self.inner
        if isinstance(inner, Literal) and len(inner.word) == 1:
            return f"{inner}*"
        return f"({inner})*"


def star_height(e: RatExpr) -> int:
    if isinstance(e, Literal):
        return 0
    if isinstance(e, Star):
        return 1 + star_height(e.inner)
    return max((star_height(p) for p in e.parts), default=0)


def literal_union(words) -> RatExpr:
    words = sorted(set(words), key=lambda w: (len(w), w))
    if not words:
        raise ValueError("literal_union needs at least one word")
    if len(words) == 1:
        return Literal(words[0])
    return Union(tuple(Literal(w) for w in words))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else None

    def where(self) -> int:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else len(self.text)

    def fail(self, message: str):
        raise ParseError(message, self.text, self.where())

    def parse(self) -> RatExpr:
        if not self.tokens:
            self.fail("empty expression (use 1 for the empty word)")
        e = self.expr()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return e

    def expr(self) -> RatExpr:
        parts = [self.term()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Union(tuple(parts))

    def term(self) -> RatExpr:
        factors: list[RatExpr] = []
        while self.peek() is not None and self.peek() in "aA1(":
            factors.append(self.factor())
        if not factors:
            self.fail("expected a, A, 1 or (")
        merged: list[RatExpr] = []
        for f in factors:
            if isinstance(f, Literal) and merged and isinstance(merged[-1], Literal):
                merged[-1] = Literal(merged[-1].word + f.word)
            else:
                merged.append(f)
        return merged[0] if len(merged) == 1 else Concat(tuple(merged))

    def factor(self) -> RatExpr:
        e = self.atom()
        while self.peek() == "*":
            self.pos += 1
            e = Star(e)
        return e

    def atom(self) -> RatExpr:
        ch = self.peek()
        if ch in ("a", "A"):
            self.pos += 1
            return Literal(ch)
        if ch == "1":
            self.pos += 1
            return Literal("")
        if ch == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                self.fail("expected )")
            self.pos += 1
            return e
        self.fail("expected a, A, 1 or (")


def parse(text: str) -> RatExpr:
    return _Parser(text).parse()
