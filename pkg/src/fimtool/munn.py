"""Munn trees: the word problem and J-order for free inverse monoids.

Words over an arbitrary alphabet use lowercase letters for generators and
uppercase letters for their inverses, so ``abBA`` is ``a b b^-1 a^-1``.
Trees store only positive edges ``(source, letter, target)``.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from fimtool.element import Element
from fimtool.errors import ParseError


def parse_genword(text: str, alphabet: str | None = None) -> str:
    word = "".join(text.split())
    if word == "1":
        return ""
    for pos, ch in enumerate(word):
        if not ch.isalpha() or (alphabet is not None and ch.lower() not in alphabet):
            raise ParseError(f"letter {ch!r} not in alphabet", word, pos)
    return word


def invert_word(word: str) -> str:
    return word[::-1].swapcase()


class _Folder:
    """Union-find over vertices with per-letter in/out adjacency, folding on conflict."""

    def __init__(self, size: int = 0):
        self.parent: list[int] = []
        self.out: list[dict[str, int] | None] = []
        self.inn: list[dict[str, int] | None] = []
        for _ in range(size):
            self.new_vertex()

    def new_vertex(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        self.inn.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        parent = self.parent
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    def add_edge(self, u: int, letter: str, v: int) -> None:
        u, v = self.find(u), self.find(v)
        w = self.out[u].get(letter)
        if w is not None:
            self.merge(w, v)
            return
        w = self.inn[v].get(letter)
        if w is not None:
            self.merge(w, u)
            return
        self.out[u][letter] = v
        self.inn[v][letter] = u

    def merge(self, a: int, b: int) -> None:
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if len(self.out[a]) + len(self.inn[a]) < len(self.out[b]) + len(self.inn[b]):
                a, b = b, a
            self.parent[b] = a
            out_a, inn_a = self.out[a], self.inn[a]
            for letter, t in self.out[b].items():
                if letter in out_a:
                    stack.append((out_a[letter], t))
                else:
                    out_a[letter] = t
            for letter, s in self.inn[b].items():
                if letter in inn_a:
                    stack.append((inn_a[letter], s))
                else:
                    inn_a[letter] = s
            self.out[b] = self.inn[b] = None

    def tree(self, initial: int, terminal: int) -> MunnTree:
        edges = []
        for v in range(len(self.parent)):
            if self.parent[v] == v:
                for letter, t in self.out[v].items():
                    edges.append((v, letter, self.find(t)))
        return _canonical(edges, self.find(initial), self.find(terminal))


def _canonical(edges, initial: int, terminal: int) -> MunnTree:
    """Renumber vertices breadth-first from the initial vertex, letters in sorted order."""
    out: dict[int, dict[str, int]] = {}
    inn: dict[int, dict[str, int]] = {}
    for s, x, t in edges:
        out.setdefault(s, {})[x] = t
        inn.setdefault(t, {})[x] = s
    letters = sorted({x for _, x, _ in edges})
    number = {initial: 0}
    queue = deque([initial])
    while queue:
        v = queue.popleft()
        for x in letters:
            for nbr in (out.get(v, {}).get(x), inn.get(v, {}).get(x)):
                if nbr is not None and nbr not in number:
                    number[nbr] = len(number)
                    queue.append(nbr)
    renumbered = tuple(sorted((number[s], x, number[t]) for s, x, t in edges))
    return MunnTree(len(number), renumbered, 0, number[terminal])


@dataclass(frozen=True)
class MunnTree:
    size: int
    edges: tuple[tuple[int, str, int], ...]
    initial: int
    terminal: int

    @cached_property
    def out(self) -> list[dict[str, int]]:
        table: list[dict[str, int]] = [{} for _ in range(self.size)]
        for s, x, t in self.edges:
            table[s][x] = t
        return table

    @cached_property
    def inn(self) -> list[dict[str, int]]:
        table: list[dict[str, int]] = [{} for _ in range(self.size)]
        for s, x, t in self.edges:
            table[t][x] = s
        return table

    @property
    def norm(self) -> int:
        return len(self.edges)

    @property
    def is_idempotent(self) -> bool:
        return self.initial == self.terminal

    def neighbours(self, v: int):
        """Yield ``(letter, direction, vertex)`` for every edge at ``v``."""
        for x, t in self.out[v].items():
            yield x, 1, t
        for x, s in self.inn[v].items():
            yield x, -1, s

    def shape(self) -> MunnTree:
        """The tree with markers forgotten (both placed on vertex 0)."""
        return MunnTree(self.size, self.edges, 0, 0)

    def reads(self, word: str, start: int | None = None) -> int | None:
        """Follow ``word`` from ``start``; return the end vertex or ``None``."""
        v = self.initial if start is None else start
        for ch in word:
            table = self.out if ch.islower() else self.inn
            v = table[v].get(ch.lower())
            if v is None:
                return None
        return v

    def times_letter(self, ch: str) -> MunnTree:
        """Right multiplication by a single letter."""
        x = ch.lower()
        table = self.out if ch.islower() else self.inn
        nxt = table[self.terminal].get(x)
        edges = list(self.edges)
        if nxt is None:
            nxt = self.size
            edges.append((self.terminal, x, nxt) if ch.islower() else (nxt, x, self.terminal))
        return _canonical(edges, self.initial, nxt)

    def word(self) -> str:
        """A word whose Munn tree is this tree: a depth-first tour, then a walk to the terminal."""
        parts: list[str] = []
        seen = {self.initial}
        path_to: dict[int, str] = {self.initial: ""}

        def visit(v: int) -> None:
            for x, direction, w in sorted(self.neighbours(v)):
                if w in seen:
                    continue
                seen.add(w)
                step = x if direction == 1 else x.upper()
                path_to[w] = path_to[v] + step
                parts.append(step)
                visit(w)
                parts.append(invert_word(step))

        visit(self.initial)
        return "".join(parts) + path_to[self.terminal]


def fold(word: str, rng: random.Random | None = None) -> MunnTree:
    """Fold the linear automaton of ``word``; ``rng`` shuffles the edge order."""
    edges = []
    for i, ch in enumerate(word):
        x = ch.lower()
        edges.append((i, x, i + 1) if ch.islower() else (i + 1, x, i))
    if rng is not None:
        rng.shuffle(edges)
    folder = _Folder(len(word) + 1)
    for e in edges:
        folder.add_edge(*e)
    return folder.tree(0, len(word))


def multiply(x: MunnTree, y: MunnTree) -> MunnTree:
    """Glue the initial vertex of ``y`` onto the terminal vertex of ``x`` and fold."""
    folder = _Folder(x.size + y.size)
    for s, letter, t in x.edges:
        folder.add_edge(s, letter, t)
    off = x.size
    for s, letter, t in y.edges:
        folder.add_edge(s + off, letter, t + off)
    folder.merge(x.terminal, y.initial + off)
    return folder.tree(x.initial, y.terminal + off)


def inverse(x: MunnTree) -> MunnTree:
    return _canonical(x.edges, x.terminal, x.initial)


def isomorphic(x: MunnTree, y: MunnTree) -> bool:
    """Marked isomorphism by simultaneous traversal from the initial vertices."""
    if x.size != y.size or len(x.edges) != len(y.edges):
        return False
    image = {x.initial: y.initial}
    queue = deque([x.initial])
    while queue:
        v = queue.popleft()
        w = image[v]
        for table_x, table_y in ((x.out, y.out), (x.inn, y.inn)):
            for letter, v2 in table_x[v].items():
                w2 = table_y[w].get(letter)
                if w2 is None:
                    return False
                if v2 in image:
                    if image[v2] != w2:
                        return False
                else:
                    image[v2] = w2
                    queue.append(v2)
    return len(set(image.values())) == x.size and image.get(x.terminal) == y.terminal


def words_equal(u: str, v: str) -> bool:
    return isomorphic(fold(u), fold(v))


def _extend(v: MunnTree, u: MunnTree, anchor: int) -> bool:
    image = {0: anchor}
    queue = deque([0])
    while queue:
        p = queue.popleft()
        q = image[p]
        for table_v, table_u in ((v.out, u.out), (v.inn, u.inn)):
            for letter, p2 in table_v[p].items():
                q2 = table_u[q].get(letter)
                if q2 is None:
                    return False
                if p2 not in image:
                    image[p2] = q2
                    queue.append(p2)
    return len(set(image.values())) == len(image)


def embeds(v: MunnTree, u: MunnTree) -> bool:
    """Is there a label-preserving embedding of the unmarked tree ``v`` into ``u``?

    Tries every anchor of ``u`` for vertex 0 of ``v``, so the cost is
    O(|u| * |v|).
    """
    if v.size > u.size:
        return False
    return any(_extend(v, u, anchor) for anchor in range(u.size))


def leq_J_general(uw: str, vw: str) -> bool:
    """``u <=_J v`` in the free inverse monoid, for words ``u`` and ``v``."""
    return embeds(fold(vw), fold(uw))


def to_element(tree: MunnTree) -> Element:
    """Read a one-letter Munn tree (a path) as a triple."""
    pos = {tree.initial: 0}
    queue = deque([tree.initial])
    while queue:
        v = queue.popleft()
        for _, direction, w in tree.neighbours(v):
            if w not in pos:
                pos[w] = pos[v] + direction
                queue.append(w)
    return Element(min(pos.values()), pos[tree.terminal], max(pos.values()))


def describe(tree: MunnTree) -> str:
    lines = [f"vertices: {tree.size}", f"initial: {tree.initial}", f"terminal: {tree.terminal}", "edges:"]
    lines += [f"  {s} -{x}-> {t}" for s, x, t in tree.edges]
    return "\n".join(lines)


def to_dot(tree: MunnTree, name: str = "munn") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(tree.size):
        attrs = []
        if v == tree.initial:
            attrs.append('shape=circle')
        if v == tree.terminal:
            attrs.append('style=filled, fillcolor=black, fontcolor=white')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for s, x, t in tree.edges:
        lines.append(f'  {s} -> {t} [label="{x}"];')
    lines.append("}")
    return "\n".join(lines)
