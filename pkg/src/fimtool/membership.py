"""Membership of elements in rational subsets, and enumeration of bounded pieces of them."""

from __future__ import annotations

from collections import deque
from collections.abc import Set
from dataclasses import dataclass
from typing import Any, Protocol

from fimtool import element as el
from fimtool import kernels, munn
from fimtool.element import Element
from fimtool.rataut.automaton import Automaton

SIGN = {"a": 1, "A": -1}


class JAboveMonoid(Protocol):
    """What the closure algorithm needs from a monoid in which every J-class has finitely many elements above it."""

    def identity(self) -> Any: ...

    def multiply(self, x: Any, y: Any) -> Any: ...

    def equal(self, x: Any, y: Any) -> bool: ...

    def leq_J(self, x: Any, y: Any) -> bool: ...

    def image_of_letter(self, letter: str) -> Any: ...


class FreeMonogenic:
    """The monogenic free inverse monoid on triples."""

    def identity(self) -> Element:
        return el.IDENTITY

    def multiply(self, x: Element, y: Element) -> Element:
        return el.multiply(x, y)

    def equal(self, x: Element, y: Element) -> bool:
        return x == y

    def leq_J(self, x: Element, y: Element) -> bool:
        return el.leq_J(x, y)

    def image_of_letter(self, letter: str) -> Element:
        return el.eval_word(letter)

    def key(self, x: Element) -> Element:
        return x


class FreeInverseMonoid:
    """Free inverse monoid on any alphabet, with Munn trees as elements."""

    def identity(self) -> munn.MunnTree:
        return munn.fold("")

    def multiply(self, x: munn.MunnTree, y: munn.MunnTree) -> munn.MunnTree:
        if y.size == 2 and y.initial != y.terminal:
            s, letter, _ = y.edges[0]
            return x.times_letter(letter if s == y.initial else letter.upper())
        return munn.multiply(x, y)

    def equal(self, x: munn.MunnTree, y: munn.MunnTree) -> bool:
        return x == y

    def leq_J(self, x: munn.MunnTree, y: munn.MunnTree) -> bool:
        return munn.embeds(y, x)

    def image_of_letter(self, letter: str) -> munn.MunnTree:
        return munn.fold(letter)

    def key(self, x: munn.MunnTree) -> munn.MunnTree:
        # canonical numbering makes trees hashable representatives
        return x


def member_jabove(monoid: JAboveMonoid, a: Automaton, u: Any) -> bool:
    """Worklist closure over (state, value) pairs whose value stays J-above ``u``."""
    key = getattr(monoid, "key", lambda x: x)
    letters = {x: monoid.image_of_letter(x) for x in a.letters}
    above: dict[Any, bool] = {}

    def is_above(v) -> bool:
        k = key(v)
        if k not in above:
            above[k] = monoid.leq_J(u, v)
        return above[k]

    one = monoid.identity()
    if not is_above(one):
        return False
    seen = set()
    queue = deque()
    for i in a.initial:
        config = (i, key(one))
        if config not in seen:
            seen.add(config)
            queue.append((i, one))
    products: dict[tuple[Any, str], Any] = {}
    while queue:
        q, x = queue.popleft()
        assert is_above(x)
        if q in a.terminal and monoid.equal(x, u):
            return True
        for letter, r in a.succ[q]:
            pk = (key(x), letter)
            if pk not in products:
                products[pk] = monoid.multiply(x, letters[letter])
            y = products[pk]
            if not is_above(y):
                continue
            config = (r, key(y))
            if config not in seen:
                seen.add(config)
                queue.append((r, y))
    return False


def _flat(a: Automaton):
    edges = []
    for p, x, q in a.edges:
        if x not in SIGN:
            raise ValueError(f"letter {x!r} is not a or A")
        edges.append((p, SIGN[x], q))
    return a.states, sorted(a.initial), sorted(a.terminal), edges


def member_fast(a: Automaton, u: Element) -> bool:
    """Search over (state, position, touched-min, touched-max) configurations."""
    el.validate(u)
    m, initial, terminal, edges = _flat(a)
    if m == 0:
        return False
    return bool(kernels.member_bfs(m, initial, terminal, edges, u.lam, u.pi, u.rho))


def member(a: Automaton, u: Element) -> bool:
    return member_fast(a, u)


# -- bounded enumeration -----------------------------------------------------

_FAR = 1 << 40


@dataclass(frozen=True)
class Bounds:
    """Box constraints: ``lam >= lam_min``, ``rho <= rho_max``, ``norm <= norm_max``,
    ``pi_lo <= pi <= pi_hi`` and ``rho - pi <= gap_max``."""

    lam_min: int = -_FAR
    rho_max: int = _FAR
    norm_max: int = _FAR
    pi_lo: int = -_FAR
    pi_hi: int = _FAR
    gap_max: int = _FAR

    def __post_init__(self):
        norm = min(self.norm_max, self.rho_max - self.lam_min)
        if norm >= _FAR:
            raise ValueError("bounds must be finite")
        object.__setattr__(self, "norm_max", norm)

    @classmethod
    def window(cls, nprime: int) -> Bounds:
        """The box ``lam > -n', 0 <= pi < n', rho - pi < n'``."""
        return cls(lam_min=-nprime + 1, rho_max=2 * nprime - 2, pi_lo=0, pi_hi=nprime - 1, gap_max=nprime - 1)

    @classmethod
    def ball(cls, radius: int) -> Bounds:
        return cls(norm_max=radius)

    def admits(self, u: Element) -> bool:
        return (
            u.lam >= self.lam_min
            and u.rho <= self.rho_max
            and u.norm <= self.norm_max
            and self.pi_lo <= u.pi <= self.pi_hi
            and u.rho - u.pi <= self.gap_max
        )


class ElementSet(Set):
    """A finite set of elements stored as ``{(lam, rho): mask}`` with bit ``pi - lam``."""

    __slots__ = ("_rows", "_len")

    def __init__(self, items=()):
        rows: dict[tuple[int, int], int] = {}
        for u in items:
            key = (u[0], u[2])
            rows[key] = rows.get(key, 0) | (1 << (u[1] - u[0]))
        self._rows = rows
        self._len = None

    @classmethod
    def from_rows(cls, rows: dict[tuple[int, int], int]) -> ElementSet:
        s = cls()
        s._rows = {k: v for k, v in rows.items() if v}
        return s

    @classmethod
    def _from_iterable(cls, it):
        return cls(it)

    def __contains__(self, u) -> bool:
        lam, pi, rho = u
        mask = self._rows.get((lam, rho), 0)
        return pi >= lam and bool(mask >> (pi - lam) & 1)

    def __iter__(self):
        for (lam, rho), mask in sorted(self._rows.items()):
            bit = 0
            while mask:
                if mask & 1:
                    yield Element(lam, lam + bit, rho)
                mask >>= 1
                bit += 1

    def __len__(self) -> int:
        if self._len is None:
            self._len = sum(bin(mask).count("1") for mask in self._rows.values())
        return self._len

    def __repr__(self) -> str:
        items = sorted(self)
        shown = ", ".join(str(u) for u in items[:8])
        more = f", ... ({len(items)} total)" if len(items) > 8 else ""
        return f"ElementSet({{{shown}{more}}})"

    def __le__(self, other) -> bool:
        if isinstance(other, ElementSet):
            rows = other._rows
            return all(mask & ~rows.get(k, 0) == 0 for k, mask in self._rows.items())
        return super().__le__(other)

    def issubset(self, other) -> bool:
        return self <= other

    def __sub__(self, other) -> ElementSet:
        if isinstance(other, ElementSet):
            rows = other._rows
            return ElementSet.from_rows({k: mask & ~rows.get(k, 0) for k, mask in self._rows.items()})
        return ElementSet(u for u in self if u not in other)

    def difference(self, other) -> ElementSet:
        return self - other

    def __or__(self, other) -> ElementSet:
        if isinstance(other, ElementSet):
            rows = dict(self._rows)
            for k, mask in other._rows.items():
                rows[k] = rows.get(k, 0) | mask
            return ElementSet.from_rows(rows)
        return ElementSet(list(self) + list(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, ElementSet):
            return self._rows == other._rows
        return super().__eq__(other)

    __hash__ = None

    def map(self, f) -> ElementSet:
        return ElementSet(f(u) for u in self)

    def min_by(self, key):
        return min(self, key=key, default=None)

    def least(self, key):
        """``min_by`` for keys that compare norms first: only rows of the smallest norm are scanned."""
        if not self._rows:
            return None
        low = min(rho - lam for lam, rho in self._rows)
        rows = {k: v for k, v in self._rows.items() if k[1] - k[0] == low}
        return ElementSet.from_rows(rows).min_by(key)


def enumerate_ball(a: Automaton, bounds: Bounds) -> ElementSet:
    """Every element of the subset accepted by ``a`` that lies in ``bounds``, in one sweep."""
    a = a.reduced()
    if a.states == 0:
        return ElementSet()
    m, initial, terminal, edges = _flat(a)
    rows = kernels.ball_sweep(
        m,
        initial,
        terminal,
        edges,
        max(bounds.lam_min, -bounds.norm_max),
        min(bounds.rho_max, bounds.norm_max),
        bounds.norm_max,
        bounds.pi_lo,
        bounds.pi_hi,
        bounds.gap_max,
    )
    return ElementSet.from_rows(rows)


def oracle_enumerate(a: Automaton, maxlen: int, max_norm: int | None = None) -> set[Element]:
    """Evaluate every accepted word of length at most ``maxlen`` (test oracle).

    With ``max_norm`` set, prefixes whose value already exceeds it are dropped;
    norms never shrink along a word, so nothing within the norm is lost.
    """
    found: set[Element] = set()
    layer = {(i, el.IDENTITY) for i in a.initial}
    seen = set(layer)
    for step in range(maxlen + 1):
        for q, x in layer:
            if q in a.terminal:
                found.add(x)
        if step == maxlen:
            break
        nxt = set()
        for q, x in layer:
            for letter, r in a.succ[q]:
                y = el.multiply(x, el.eval_word(letter))
                if max_norm is not None and y.norm > max_norm:
                    continue
                config = (r, y)
                if config not in seen:
                    seen.add(config)
                    nxt.add(config)
        layer = nxt
    return found
