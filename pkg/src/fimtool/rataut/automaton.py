"""Finite automata over a signed alphabet, and the epsilon-free Kleene construction.

Edges are ``(source, letter, target)`` with letters ``a`` / ``A`` for the
monogenic monoid; the Munn-tree membership instance also accepts other
lowercase/uppercase pairs.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from fimtool.errors import ParseError
from fimtool.rataut.expr import Concat, Literal, RatExpr, Star, Union, parse


@dataclass(frozen=True)
class Automaton:
    states: int
    initial: frozenset
    terminal: frozenset
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "terminal", frozenset(self.terminal))
        edges = tuple(sorted({(int(p), str(x), int(q)) for p, x, q in self.edges}))
        object.__setattr__(self, "edges", edges)
        for q in self.initial | self.terminal:
            if not 0 <= q < self.states:
                raise ValueError(f"state {q} out of range for {self.states} states")
        for p, x, q in edges:
            if not (0 <= p < self.states and 0 <= q < self.states):
                raise ValueError(f"edge {(p, x, q)} out of range for {self.states} states")
            if len(x) != 1 or not x.isalpha():
                raise ValueError(f"edge label {x!r} is not a letter")

    # -- structure -----------------------------------------------------------

    @cached_property
    def succ(self) -> list[list[tuple[str, int]]]:
        table: list[list[tuple[str, int]]] = [[] for _ in range(self.states)]
        for p, x, q in self.edges:
            table[p].append((x, q))
        return table

    @cached_property
    def pred(self) -> list[list[tuple[str, int]]]:
        table: list[list[tuple[str, int]]] = [[] for _ in range(self.states)]
        for p, x, q in self.edges:
            table[q].append((x, p))
        return table

    @property
    def letters(self) -> set[str]:
        return {x for _, x, _ in self.edges}

    def accepts(self, word: str) -> bool:
        current = set(self.initial)
        for ch in word:
            current = {q for p in current for x, q in self.succ[p] if x == ch}
            if not current:
                return False
        return bool(current & self.terminal)

    def _reach(self, seeds, table) -> set[int]:
        seen = set(seeds)
        queue = deque(seen)
        while queue:
            p = queue.popleft()
            for _, q in table[p]:
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen

    def is_empty(self) -> bool:
        return not (self._reach(self.initial, self.succ) & self.terminal)

    def trim(self) -> Automaton:
        """Keep accessible and co-accessible states, renumbered in their original order."""
        keep = sorted(self._reach(self.initial, self.succ) & self._reach(self.terminal, self.pred))
        if not keep:
            return EMPTY
        index = {q: i for i, q in enumerate(keep)}
        return Automaton(
            len(keep),
            {index[q] for q in self.initial if q in index},
            {index[q] for q in self.terminal if q in index},
            tuple((index[p], x, index[q]) for p, x, q in self.edges if p in index and q in index),
        )

    def _forward_quotient(self) -> Automaton:
        """Merge states with the same future (coarsest forward bisimulation)."""
        block = [int(q in self.terminal) for q in range(self.states)]
        while True:
            signatures = [(block[q], frozenset((x, block[r]) for x, r in self.succ[q])) for q in range(self.states)]
            numbering: dict = {}
            new_block = [numbering.setdefault(sig, len(numbering)) for sig in signatures]
            if len(numbering) == len(set(block)):
                break
            block = new_block
        order: dict[int, int] = {}
        for q in range(self.states):
            order.setdefault(block[q], len(order))
        if len(order) == self.states:
            return self
        return Automaton(
            len(order),
            {order[block[q]] for q in self.initial},
            {order[block[q]] for q in self.terminal},
            tuple((order[block[p]], x, order[block[q]]) for p, x, q in self.edges),
        )

    def _bisimulation_reduced(self) -> Automaton:
        a = self.trim()
        while True:
            before = a.states
            a = a._forward_quotient()
            a = a.beta()._forward_quotient().beta()
            if a.states == before:
                return a

    def determinized(self, limit: int | None = None) -> Automaton | None:
        """Subset construction (partial, trimmed); ``None`` if more than ``limit`` subsets appear."""
        start = frozenset(self.initial)
        index = {start: 0}
        todo = [start]
        edges = []
        while todo:
            current = todo.pop()
            moves: dict[str, set[int]] = {}
            for p in current:
                for x, q in self.succ[p]:
                    moves.setdefault(x, set()).add(q)
            for x, targets in sorted(moves.items()):
                target = frozenset(targets)
                if target not in index:
                    if limit is not None and len(index) >= limit:
                        return None
                    index[target] = len(index)
                    todo.append(target)
                edges.append((index[current], x, index[target]))
        terminal = {i for subset, i in index.items() if subset & self.terminal}
        return Automaton(len(index), {0}, terminal, tuple(edges)).trim()

    def reduced(self) -> Automaton:
        """A small automaton for the same language.

        Bisimilar states are merged in both directions; when the minimal
        deterministic automaton is smaller still, it is returned instead.
        """
        a = self._bisimulation_reduced()
        if a.states <= 1:
            return a
        dfa = a.determinized(limit=4 * a.states + 4)
        if dfa is not None:
            dfa = dfa._forward_quotient()
            if dfa.states < a.states:
                return dfa
        return a

    def has_empty_word(self) -> bool:
        return bool(self.initial & self.terminal)

    # -- language operations ---------------------------------------------------

    def inverse(self) -> Automaton:
        """Recognises the inverses: reverse edges, swap letter signs, swap I and T."""
        return Automaton(self.states, self.terminal, self.initial, tuple((q, x.swapcase(), p) for p, x, q in self.edges))

    def beta(self) -> Automaton:
        """Recognises the beta-images: reverse edges keeping labels, swap I and T."""
        return Automaton(self.states, self.terminal, self.initial, tuple((q, x, p) for p, x, q in self.edges))

    def union(self, other: Automaton) -> Automaton:
        off = self.states
        return Automaton(
            self.states + other.states,
            self.initial | {q + off for q in other.initial},
            self.terminal | {q + off for q in other.terminal},
            self.edges + tuple((p + off, x, q + off) for p, x, q in other.edges),
        )

    def concat(self, other: Automaton) -> Automaton:
        off = self.states
        edges = list(self.edges) + [(p + off, x, q + off) for p, x, q in other.edges]
        starts = [(x, q + off) for p, x, q in other.edges if p in other.initial]
        for t in self.terminal:
            edges += [(t, x, q) for x, q in starts]
        terminal = {q + off for q in other.terminal}
        if other.has_empty_word():
            terminal |= self.terminal
        return Automaton(self.states + other.states, self.initial, terminal, tuple(edges)).trim()

    def is_star_closed(self) -> bool:
        """A sufficient test for ``L* = L``: one initial state, itself terminal, whose moves every terminal state shares."""
        if len(self.initial) != 1:
            return False
        (i,) = self.initial
        if i not in self.terminal:
            return False
        first = set(self.succ[i])
        return all(first <= set(self.succ[t]) for t in self.terminal)

    def star(self) -> Automaton:
        """Fresh initial-terminal state ``s``; first edges start at ``s``, last edges loop back."""
        trimmed = self.trim()
        if trimmed.states and trimmed.is_star_closed():
            return trimmed
        s = self.states
        edges = list(self.edges)
        for p, x, q in self.edges:
            if p in self.initial:
                edges.append((s, x, q))
            if q in self.terminal:
                edges.append((p, x, s))
            if p in self.initial and q in self.terminal:
                edges.append((s, x, s))
        return Automaton(s + 1, {s}, {s}, tuple(edges)).trim()

    # -- serialisation ---------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "states": self.states,
            "initial": sorted(self.initial),
            "terminal": sorted(self.terminal),
            "edges": [[p, x, q] for p, x, q in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Automaton:
        try:
            return cls(int(data["states"]), data["initial"], data["terminal"], tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed automaton JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> Automaton:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", text, exc.pos) from exc
        return cls.from_dict(data)

    def to_dot(self, name: str = "automaton") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for q in range(self.states):
            shape = "doublecircle" if q in self.terminal else "circle"
            lines.append(f"  {q} [shape={shape}];")
            if q in self.initial:
                lines.append(f"  start{q} [shape=point]; start{q} -> {q};")
        for p, x, q in self.edges:
            lines.append(f'  {p} -> {q} [label="{x}"];')
        lines.append("}")
        return "\n".join(lines)


EMPTY = Automaton(0, frozenset(), frozenset(), ())


def chain(word: str) -> Automaton:
    k = len(word)
    return Automaton(k + 1, {0}, {k}, tuple((i, ch, i + 1) for i, ch in enumerate(word)))


def single_state(letters: str = "aA") -> Automaton:
    """One initial-terminal state with a loop for each letter (``letters='aA'`` gives all of F)."""
    return Automaton(1, {0}, {0}, tuple((0, ch, 0) for ch in letters))


def compile_expr(e: RatExpr | str) -> Automaton:
    """Epsilon-free automaton for ``e``; every intermediate result is trimmed."""
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, Literal):
        return chain(e.word)
    if isinstance(e, Union):
        result = compile_expr(e.parts[0])
        for part in e.parts[1:]:
            result = result.union(compile_expr(part))
        return result.trim()
    if isinstance(e, Concat):
        result = compile_expr(e.parts[0])
        for part in e.parts[1:]:
            result = result.concat(compile_expr(part))
        return result
    if isinstance(e, Star):
        return compile_expr(e.inner).star()
    raise TypeError(f"not a rational expression: {e!r}")


def star_of_words(words) -> Automaton:
    """Automaton for ``(w1|...|wk)*``."""
    words = sorted(set(words))
    if not words:
        return chain("")
    result = chain(words[0])
    for w in words[1:]:
        result = result.union(chain(w))
    return result.star()
