"""Arithmetic in the monogenic free inverse monoid F.

An element is stored as the triple ``(lam, pi, rho)``: the Munn tree of the
element is the path on the integers ``lam..rho`` read from ``0`` to ``pi``.
Words are strings over ``a`` (the generator) and ``A`` (its inverse).
"""

from __future__ import annotations

import re
from typing import NamedTuple

from fimtool.errors import ParseError, PreconditionError

LETTERS = {"a": 1, "A": -1}


class Element(NamedTuple):
    lam: int
    pi: int
    rho: int

    def __str__(self) -> str:
        return f"({self.lam},{self.pi},{self.rho})"

    @property
    def norm(self) -> int:
        return self.rho - self.lam

    @property
    def gap(self) -> int:
        """Distance from the terminal vertex to the right end, ``rho - pi``."""
        return self.rho - self.pi


IDENTITY = Element(0, 0, 0)
GENERATOR = Element(0, 1, 1)
GENERATOR_INV = Element(-1, -1, 0)


def element(lam: int, pi: int, rho: int) -> Element:
    """Build an element, checking ``lam <= min(0, pi)`` and ``max(0, pi) <= rho``."""
    u = Element(int(lam), int(pi), int(rho))
    validate(u)
    return u


def validate(u: Element) -> None:
    lam, pi, rho = u
    if not (lam <= 0 <= rho and lam <= pi <= rho):
        raise PreconditionError(f"{tuple(u)} is not a valid triple (need lam <= 0, pi <= rho, lam <= pi, 0 <= rho)")


def parse_word(text: str) -> str:
    """Normalise a word: drop whitespace, map ``1`` to the empty word."""
    word = "".join(text.split())
    if word == "1":
        return ""
    for pos, ch in enumerate(word):
        if ch not in LETTERS:
            raise ParseError(f"unexpected character {ch!r} in word", word, pos)
    return word


_TRIPLE = re.compile(r"^\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?$")


def parse_element(text: str) -> Element:
    """Accept either a triple such as ``(-1,1,1)`` or a word such as ``Aaa``."""
    m = _TRIPLE.match(text.strip())
    if m:
        return element(*(int(g) for g in m.groups()))
    return eval_word(parse_word(text))


def eval_word(word: str) -> Element:
    lo = hi = pos = 0
    for ch in word:
        pos += LETTERS[ch]
        if pos < lo:
            lo = pos
        elif pos > hi:
            hi = pos
    return Element(lo, pos, hi)


def multiply(u: Element, v: Element) -> Element:
    return Element(min(u.lam, u.pi + v.lam), u.pi + v.pi, max(u.rho, u.pi + v.rho))


def product(*elements: Element) -> Element:
    result = IDENTITY
    for v in elements:
        result = multiply(result, v)
    return result


def inverse(u: Element) -> Element:
    return Element(u.lam - u.pi, -u.pi, u.rho - u.pi)


def alpha(u: Element) -> Element:
    """The automorphism exchanging ``a`` and ``A``."""
    return Element(-u.rho, -u.pi, -u.lam)


def beta(u: Element) -> Element:
    """The anti-automorphism ``u -> alpha(u)^-1``."""
    return Element(u.pi - u.rho, u.pi, u.pi - u.lam)


def norm(u: Element) -> int:
    return u.rho - u.lam


def is_idempotent(u: Element) -> bool:
    return u.pi == 0


def leq_J(u: Element, v: Element) -> bool:
    """``u <=_J v``: the path of ``v`` embeds in the path of ``u``."""
    return v.rho - v.lam <= u.rho - u.lam


def power(u: Element, k: int) -> Element:
    if k < 0:
        raise PreconditionError(f"power needs k >= 0, got {k}")
    if k == 0:
        return IDENTITY
    shift = (k - 1) * u.pi
    return Element(u.lam + min(0, shift), k * u.pi, u.rho + max(0, shift))


def canonical_word(u: Element) -> str:
    """The word ``A^-lam a^(rho-lam) A^(rho-pi)``, which evaluates to ``u``."""
    return "A" * (-u.lam) + "a" * (u.rho - u.lam) + "A" * (u.rho - u.pi)


def short_word(u: Element) -> str:
    """The shorter of ``A^-lam a^(rho-lam) A^(rho-pi)`` and ``a^rho A^(rho-lam) a^(pi-lam)``."""
    left_first = canonical_word(u)
    right_first = "a" * u.rho + "A" * (u.rho - u.lam) + "a" * (u.pi - u.lam)
    return right_first if len(right_first) < len(left_first) else left_first


# -- cut-and-paste maps ------------------------------------------------------


def in_G(u: Element, n: int, i: int) -> bool:
    return _G_failure(u, n, i) is None


def _G_failure(u: Element, n: int, i: int) -> str | None:
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if i == 1:
        if u.pi < 0:
            return "G1 needs pi >= 0"
        if u.lam > -n:
            return f"G1 needs lam <= -{n}"
    elif i == 2:
        if u.pi < n:
            return f"G2 needs pi >= {n}"
    elif i == 3:
        if u.pi < 0:
            return "G3 needs pi >= 0"
        if u.rho - u.pi < n:
            return f"G3 needs rho - pi >= {n}"
    else:
        raise PreconditionError(f"i must be 1, 2 or 3, got {i}")
    return None


def xi(u: Element, n: int, i: int) -> Element:
    """Shorten one of the three arms of ``u`` by ``n`` edges."""
    failure = _G_failure(u, n, i)
    if failure is not None:
        raise PreconditionError(f"xi_{{{n},{i}}} undefined at {u}: {failure}")
    if i == 1:
        return Element(u.lam + n, u.pi, u.rho)
    if i == 2:
        return Element(u.lam, u.pi - n, u.rho - n)
    return Element(u.lam, u.pi, u.rho - n)


def eta(z: int, n: int, nprime: int) -> int:
    """Clamp ``|z|`` into ``[0, nprime)`` while preserving it modulo ``n``."""
    if n < 1 or nprime < n:
        raise PreconditionError(f"eta needs nprime >= n >= 1, got n={n}, nprime={nprime}")
    if z < 0:
        return -eta(-z, n, nprime)
    if z < nprime:
        return z
    top = nprime - 1
    return top - (top - z) % n


def in_W(u: Element, nprime: int) -> bool:
    return u.lam > -nprime and 0 <= u.pi < nprime and u.rho - u.pi < nprime


def zeta(u: Element, n: int, nprime: int) -> Element:
    if u.pi < 0:
        raise PreconditionError(f"zeta is defined on pi >= 0 only, got {u}; route through inverse()")
    pi = eta(u.pi, n, nprime)
    return Element(eta(u.lam, n, nprime), pi, pi + eta(u.rho - u.pi, n, nprime))
