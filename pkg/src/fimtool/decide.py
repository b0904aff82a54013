"""Finite normal forms of rational subsets, inclusion and equality with checked witnesses."""

from __future__ import annotations

from dataclasses import dataclass

from fimtool import element as el
from fimtool.cutpaste import DEFAULT_CEILING, Constants, check_ceiling, constants, harmonize
from fimtool.element import Element
from fimtool.membership import Bounds, ElementSet, enumerate_ball, member_fast
from fimtool.rataut.automaton import Automaton


@dataclass(frozen=True)
class NormalForm:
    """``W`` and ``Wprime`` are the traces of the subset and of its inverse on the window."""

    constants: Constants | None
    W: ElementSet
    Wprime: ElementSet

    def contains(self, u: Element) -> bool:
        if self.constants is None:
            return False
        n, nprime = self.constants.pair
        if u.pi >= 0:
            return el.zeta(u, n, nprime) in self.W
        return el.zeta(el.inverse(u), n, nprime) in self.Wprime


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Element | None = None
    constants: Constants | None = None

    def __bool__(self) -> bool:
        return self.holds


def witness_key(u: Element):
    """Smallest norm first, then the element closest to the identity."""
    return (u.norm, abs(u.pi), -u.pi, u.lam)


def _constants_for(automata, ceiling) -> Constants:
    c = harmonize(constants(a) for a in automata if not a.is_empty())
    check_ceiling(c, ceiling)
    return c


def normal_form(a: Automaton, ceiling: int | None = DEFAULT_CEILING) -> NormalForm:
    a = a.trim()
    if a.is_empty():
        return NormalForm(None, ElementSet(), ElementSet())
    c = _constants_for([a, a.inverse()], ceiling)
    box = Bounds.window(c.nprime)
    return NormalForm(c, enumerate_ball(a, box), enumerate_ball(a.inverse(), box))


def _some_member(a: Automaton) -> Element:
    return min(enumerate_ball(a, Bounds.ball(a.states)), key=witness_key)


def _checked(k: Automaton, l: Automaton, w: Element, c: Constants | None) -> Verdict:
    if not member_fast(k, w) or member_fast(l, w):
        raise AssertionError(f"witness {w} failed verification")
    return Verdict(False, w, c)


def _ball_gap(k: Automaton, l: Automaton, box: Bounds, balls: dict) -> Element | None:
    """Least element of ``k`` but not ``l`` inside ``box``, on both sides of the identity."""

    def ball(a: Automaton, side: str) -> ElementSet:
        key = (id(a), side)
        if key not in balls:
            balls[key] = enumerate_ball(a if side == "+" else a.inverse(), box)
        return balls[key]

    candidates = []
    gap = ball(k, "+") - ball(l, "+")
    if gap:
        candidates.append(gap.least(witness_key))
    gap = ball(k, "-") - ball(l, "-")
    if gap:
        candidates.append(el.inverse(gap.least(witness_key)))
    return min(candidates, key=witness_key) if candidates else None


def _included(k: Automaton, l: Automaton, c: Constants, balls: dict) -> Verdict:
    if k.is_empty():
        return Verdict(True, None, c)
    if l.is_empty():
        return _checked(k, l, _some_member(k), c)
    w = _ball_gap(k, l, Bounds.window(c.nprime), balls)
    if w is None:
        return Verdict(True, None, c)
    return _checked(k, l, w, c)


def included(k: Automaton, l: Automaton, ceiling: int | None = DEFAULT_CEILING) -> Verdict:
    """Is the subset accepted by ``k`` contained in the one accepted by ``l``?"""
    k, l = k.trim(), l.trim()
    if k.is_empty():
        return Verdict(True)
    if l.is_empty():
        return _checked(k, l, _some_member(k), None)
    c = _constants_for([k, l, k.inverse(), l.inverse()], ceiling)
    return _included(k, l, c, {})


def equal(k: Automaton, l: Automaton, ceiling: int | None = DEFAULT_CEILING) -> Verdict:
    k, l = k.trim(), l.trim()
    if k.is_empty() and l.is_empty():
        return Verdict(True)
    if k.is_empty() or l.is_empty():
        bigger, smaller = (l, k) if k.is_empty() else (k, l)
        return _checked(bigger, smaller, _some_member(bigger), None)
    c = _constants_for([k, l, k.inverse(), l.inverse()], ceiling)
    balls: dict = {}
    forward = _included(k, l, c, balls)
    if not forward:
        return forward
    return _included(l, k, c, balls)


def is_submonoid(l: Automaton, ceiling: int | None = DEFAULT_CEILING) -> Verdict:
    """A subset is a submonoid exactly when its star adds nothing."""
    return equal(l.star(), l, ceiling)
