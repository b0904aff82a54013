"""The finite inverse monoid ``<a | a^(K+n) = a^K>`` and recognizability of rational subsets.

Elements of the quotient are closed one-letter Schützenberger graphs: every
vertex has at most one outgoing and one incoming ``a``-edge, so a connected
graph is a path or a cycle.  Closure repeatedly sews the other side of the
relation next to every occurrence of one side and folds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from fimtool import element as el
from fimtool.cutpaste import DEFAULT_CEILING, check_ceiling, constants, harmonize, Constants
from fimtool.decide import Verdict, witness_key
from fimtool.element import Element
from fimtool.errors import PreconditionError
from fimtool.membership import Bounds, enumerate_ball
from fimtool.rataut.automaton import Automaton


class _Graph:
    """One-letter graph under folding: union-find with injective successor and predecessor maps."""

    def __init__(self):
        self.parent: list[int] = []
        self.succ: dict[int, int] = {}
        self.pred: dict[int, int] = {}

    def vertex(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def edge(self, u: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        if u in self.succ:
            self.merge(self.succ[u], v)
        elif v in self.pred:
            self.merge(self.pred[v], u)
        else:
            self.succ[u] = v
            self.pred[v] = u

    def merge(self, a: int, b: int) -> None:
        pending = [(a, b)]
        while pending:
            a, b = pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            self.parent[b] = a
            # map values may point at absorbed vertices; readers always go through find()
            for table in (self.succ, self.pred):
                if b in table:
                    tb = table.pop(b)
                    if a in table:
                        pending.append((table[a], tb))
                    else:
                        table[a] = tb

    def read(self, v: int, k: int) -> int | None:
        v = self.find(v)
        for _ in range(k):
            nxt = self.succ.get(v)
            if nxt is None:
                return None
            v = self.find(nxt)
        return v

    def path(self, start: int, k: int, end: int) -> None:
        v = start
        for _ in range(k - 1):
            w = self.vertex()
            self.edge(v, w)
            v = w
        self.edge(v, end)

    def roots(self) -> list[int]:
        return [v for v in range(len(self.parent)) if self.parent[v] == v]

    def close(self, K: int, n: int) -> None:
        """Sew ``a^(K+n)`` beside every ``a^K`` and vice versa until nothing changes."""
        changed = True
        while changed:
            changed = False
            for v in self.roots():
                if self.parent[v] != v:
                    continue
                short, long = self.read(v, K), self.read(v, K + n)
                if short is not None and long != short:
                    self.path(v, K + n, short)
                    changed = True
                elif long is not None and short != long:
                    self.path(v, K, long)
                    changed = True


@dataclass(frozen=True)
class MElement:
    """A closed graph: ``cycle`` tells path from cycle, vertices are ``0..size-1``
    along the successor map (from the source, or from the initial vertex on a cycle)."""

    K: int
    n: int
    cycle: bool
    size: int
    initial: int
    terminal: int
    rep: str = field(default="", compare=False)

    def step(self, v: int, letter: str) -> int | None:
        d = 1 if letter == "a" else -1
        w = v + d
        if self.cycle:
            return w % self.size
        return w if 0 <= w < self.size else None

    def reads(self, word: str) -> bool:
        """Can ``word`` be read from the initial to the terminal vertex?"""
        v = self.initial
        for ch in word:
            v = self.step(v, ch)
            if v is None:
                return False
        return v == self.terminal

    def __str__(self) -> str:
        kind = "cycle" if self.cycle else "path"
        return f"{kind}[{self.size}] {self.initial}->{self.terminal}"

    def to_dot(self, name: str = "schutzenberger") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for v in range(self.size):
            attrs = []
            if v == self.initial:
                attrs.append("shape=circle")
            if v == self.terminal:
                attrs.append("style=filled, fillcolor=black, fontcolor=white")
            lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
        edges = self.size if self.cycle else self.size - 1
        for v in range(edges):
            lines.append(f'  {v} -> {(v + 1) % self.size} [label="a"];')
        lines.append("}")
        return "\n".join(lines)


def _canonical(g: _Graph, initial: int, terminal: int, K: int, n: int, rep: str) -> MElement:
    initial, terminal = g.find(initial), g.find(terminal)
    start = initial
    while True:
        p = g.pred.get(start)
        if p is None:
            break
        p = g.find(p)
        if p == initial:
            # went all the way round: a cycle, numbered from the initial vertex
            start = initial
            break
        start = p
    number = {}
    v = start
    while v is not None and v not in number:
        number[v] = len(number)
        nxt = g.succ.get(v)
        v = g.find(nxt) if nxt is not None else None
    cycle = v is not None
    return MElement(K, n, cycle, len(number), number[initial], number[terminal], rep)


def _graph_of(x: MElement, g: _Graph) -> list[int]:
    vertices = [g.vertex() for _ in range(x.size)]
    for v in range(x.size - 1):
        g.edge(vertices[v], vertices[v + 1])
    if x.cycle:
        g.edge(vertices[-1], vertices[0])
    return vertices


def _check(K: int, n: int) -> None:
    if K < 1 or n < 1:
        raise PreconditionError(f"need K >= 1 and n >= 1, got K={K}, n={n}")


def close_word(word: str, K: int, n: int) -> MElement:
    _check(K, n)
    g = _Graph()
    v = start = g.vertex()
    for ch in word:
        w = g.vertex()
        if ch == "a":
            g.edge(v, w)
        else:
            g.edge(w, v)
        v = w
    g.close(K, n)
    return _canonical(g, start, v, K, n, word)


def stephen_close(u: Element, K: int, n: int) -> MElement:
    """The closed graph of ``u``, grown from the path of its canonical word."""
    return close_word(el.canonical_word(u), K, n)


def _same_quotient(x: MElement, y: MElement) -> None:
    if (x.K, x.n) != (y.K, y.n):
        raise PreconditionError(f"elements of different quotients: {(x.K, x.n)} vs {(y.K, y.n)}")


def m_multiply(x: MElement, y: MElement) -> MElement:
    _same_quotient(x, y)
    g = _Graph()
    vx = _graph_of(x, g)
    vy = _graph_of(y, g)
    g.merge(vx[x.terminal], vy[y.initial])
    g.close(x.K, x.n)
    return _canonical(g, vx[x.initial], vy[y.terminal], x.K, x.n, x.rep + y.rep)


def m_inverse(x: MElement) -> MElement:
    g = _Graph()
    vx = _graph_of(x, g)
    return _canonical(g, vx[x.terminal], vx[x.initial], x.K, x.n, x.rep[::-1].swapcase())


def m_equal(x: MElement, y: MElement) -> bool:
    """Each representative word is readable between the markers of the other graph."""
    _same_quotient(x, y)
    readable = x.reads(y.rep) and y.reads(x.rep)
    if readable != (x == y):
        raise AssertionError(f"canonical form and readability disagree on {x} and {y}")
    return readable


class Quotient:
    """``<a | a^(K+n) = a^K>`` with cached right multiplication by letters."""

    def __init__(self, K: int, n: int):
        _check(K, n)
        self.K, self.n = K, n
        self.one = close_word("", K, n)
        self.letter = {ch: close_word(ch, K, n) for ch in "aA"}
        self._times: dict[tuple[MElement, str], MElement] = {}

    def times_letter(self, x: MElement, ch: str) -> MElement:
        key = (x, ch)
        y = self._times.get(key)
        if y is None:
            y = m_multiply(x, self.letter[ch])
            self._times[key] = y
        return y

    def phi_word(self, word: str) -> MElement:
        x = self.one
        for ch in word:
            x = self.times_letter(x, ch)
        return x

    def phi(self, u: Element) -> MElement:
        return self.phi_word(el.canonical_word(u))

    def elements_seen(self) -> set[MElement]:
        return {self.one, *self.letter.values(), *self._times.values()}


def phi_image(a: Automaton, K: int, n: int, quotient: Quotient | None = None) -> set[MElement]:
    """Images of all accepted words, by search over (state, quotient element)."""
    q = quotient or Quotient(K, n)
    a = a.trim()
    seen = {(i, q.one) for i in a.initial}
    queue = deque(seen)
    image = set()
    while queue:
        p, x = queue.popleft()
        if p in a.terminal:
            image.add(x)
        for ch, r in a.succ[p]:
            config = (r, q.times_letter(x, ch))
            if config not in seen:
                seen.add(config)
                queue.append(config)
    return image


@dataclass(frozen=True)
class RecognizabilityReport:
    verdict: Verdict
    K: int
    n: int
    radius: int
    quotient: Quotient = field(repr=False, compare=False)


def recognizability(a: Automaton, ceiling: int | None = DEFAULT_CEILING) -> RecognizabilityReport:
    """Decide whether the subset is a union of classes of ``<a | a^(3n'+n) = a^(3n')>``.

    Elements shortened by ``n`` on an arm longer than ``K + 2n`` have the same
    image in the quotient, so both the subset and the union of the classes it
    meets are determined on the window of that radius, and comparing them
    there settles the question.
    """
    a = a.trim()
    if a.is_empty():
        q = Quotient(1, 1)
        return RecognizabilityReport(Verdict(True), 1, 1, 0, q)
    c = harmonize([constants(a), constants(a.inverse())])
    check_ceiling(c, ceiling)
    K, n = 3 * c.nprime, c.n
    radius = K + 2 * n
    check_ceiling(Constants(n, radius), ceiling, what="sweep radius")
    q = Quotient(K, n)
    image = phi_image(a, K, n, q)
    box = Bounds.window(radius)
    witnesses = []
    for side in (a, a.inverse()):
        inside = enumerate_ball(side, box)
        found = None
        for u in _window(radius):
            if u not in inside and q.phi(u if side is a else el.inverse(u)) in image:
                found = u
                break
        if found is not None:
            witnesses.append(found if side is a else el.inverse(found))
    if witnesses:
        w = min(witnesses, key=witness_key)
        return RecognizabilityReport(Verdict(False, w, c), K, n, radius, q)
    return RecognizabilityReport(Verdict(True, None, c), K, n, radius, q)


def _window(radius: int):
    """The elements of the window, by increasing norm."""
    for norm in range(3 * radius):
        for pi in range(radius):
            for gap in range(radius):
                lam = pi + gap - norm
                if -radius < lam <= 0:
                    yield Element(lam, pi, pi + gap)


def is_recognizable(a: Automaton, ceiling: int | None = DEFAULT_CEILING) -> Verdict:
    return recognizability(a, ceiling).verdict
