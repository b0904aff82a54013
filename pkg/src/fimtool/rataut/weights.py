"""Integer weight analysis of automata over ``{a, A}`` (``a`` weighs +1, ``A`` weighs -1).

The image of an automaton under the weight map is computed exactly: zero-weight
walks are saturated into a reachability relation, which turns the automaton
into two unary automata (one per sign); unary automata have ultimately periodic
languages, read off from their subset sequences.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass

from fimtool.errors import PreconditionError
from fimtool.rataut.automaton import Automaton

WEIGHT = {"a": 1, "A": -1}


class Case(enum.IntEnum):
    """Which side(s) of the weight image are infinite."""

    CASE1 = 1  # finitely many nonnegative weights
    CASE2 = 2  # finitely many nonpositive weights
    CASE3 = 3  # both sides infinite


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of progressions ``{offset + k * period | k >= 0}``.

    Periods are signed so that both ``N`` and ``-N`` are expressible; a zero
    period is a singleton.
    """

    progressions: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "progressions", tuple(sorted(set(self.progressions))))

    def __contains__(self, z: int) -> bool:
        for offset, period in self.progressions:
            if period == 0:
                if z == offset:
                    return True
            elif (z - offset) % period == 0 and (z - offset) // period >= 0:
                return True
        return False

    def __bool__(self) -> bool:
        return bool(self.progressions)

    def __str__(self) -> str:
        if not self.progressions:
            return "{}"
        parts = []
        for offset, period in self.progressions:
            if period == 0:
                parts.append(str(offset))
            else:
                sign = "+" if period > 0 else "-"
                parts.append(f"{offset}{sign}{abs(period)}k")
        return "{" + ", ".join(parts) + "}"

    @property
    def positive_infinite(self) -> bool:
        return any(p > 0 for _, p in self.progressions)

    @property
    def negative_infinite(self) -> bool:
        return any(p < 0 for _, p in self.progressions)

    def values_between(self, lo: int, hi: int) -> set[int]:
        return {z for z in range(lo, hi + 1) if z in self}

    def min_positive(self) -> int | None:
        best = None
        for offset, period in self.progressions:
            if offset > 0:
                cand = offset
            elif period > 0:
                cand = offset + period * ((-offset) // period + 1)
            else:
                continue
            best = cand if best is None else min(best, cand)
        return best


def _zero_relation(a: Automaton) -> list[set[int]]:
    """``zero[p]`` = states reachable from ``p`` by a walk of total weight 0."""
    m = a.states
    zero = [{p} for p in range(m)]
    out = {x: [[q for y, q in a.succ[p] if y == x] for p in range(m)] for x in WEIGHT}
    changed = True
    while changed:
        changed = False
        for p in range(m):
            for x, xbar in (("a", "A"), ("A", "a")):
                for p1 in out[x][p]:
                    for q1 in list(zero[p1]):
                        for q in out[xbar][q1]:
                            if q not in zero[p]:
                                zero[p].add(q)
                                changed = True
        for p in range(m):
            closure = set(zero[p])
            for q in zero[p]:
                closure |= zero[q]
            if closure != zero[p]:
                zero[p] = closure
                changed = True
    return zero


def _unary_steps(a: Automaton, zero: list[set[int]], letter: str) -> list[frozenset[int]]:
    """One step of weight ``+-1`` followed and preceded by zero-weight walks."""
    steps = []
    for p in range(a.states):
        targets: set[int] = set()
        for p1 in zero[p]:
            for x, q1 in a.succ[p1]:
                if x == letter:
                    targets |= zero[q1]
        steps.append(frozenset(targets))
    return steps


def _unary_image(a: Automaton, steps: list[frozenset[int]], sign: int) -> list[tuple[int, int]]:
    seen: dict[frozenset[int], int] = {}
    hits: list[bool] = []
    current = frozenset(a.initial)
    k = 0
    while current not in seen:
        seen[current] = k
        hits.append(bool(current & a.terminal))
        nxt: set[int] = set()
        for p in current:
            nxt |= steps[p]
        current = frozenset(nxt)
        k += 1
    start, cycle = seen[current], k - seen[current]
    start = max(start, 1)
    while len(hits) < start + cycle:
        hits.append(hits[len(hits) - cycle])
    progressions = [(sign * j, 0) for j in range(1, start) if hits[j]]
    progressions += [(sign * j, sign * cycle) for j in range(start, start + cycle) if hits[j]]
    return progressions


def pi_image(a: Automaton) -> SemilinearSet:
    """Exact set of weights of accepted words."""
    a = a.trim()
    if a.states == 0:
        return SemilinearSet(())
    zero = _zero_relation(a)
    progressions: list[tuple[int, int]] = []
    if any(zero[i] & a.terminal for i in a.initial):
        progressions.append((0, 0))
    for letter, sign in (("a", 1), ("A", -1)):
        progressions += _unary_image(a, _unary_steps(a, zero, letter), sign)
    return SemilinearSet(tuple(progressions))


def sign_case(s: SemilinearSet) -> Case:
    if not s:
        raise PreconditionError("sign_case needs a nonempty weight set")
    if not s.positive_infinite:
        return Case.CASE1
    if not s.negative_infinite:
        return Case.CASE2
    return Case.CASE3


def subgroup_gcd(s: SemilinearSet) -> int:
    g = 0
    for offset, period in s.progressions:
        g = math.gcd(g, offset, period)
    return g


def _sccs(a: Automaton) -> list[list[int]]:
    """Strongly connected components (Tarjan, iterative)."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[int] = []
    on_stack: set[int] = set()
    result: list[list[int]] = []
    counter = 0
    for root in range(a.states):
        if root in index:
            continue
        work = [(root, iter(a.succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for _, w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(a.succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(sorted(comp))
    return result


def _has_signed_cycle(a: Automaton, comp: list[int], sign: int) -> bool:
    """Longest-walk relaxation inside one component; still improving after |comp| rounds means a cycle of that sign."""
    members = set(comp)
    inner = [(p, WEIGHT[x] * sign, q) for p in comp for x, q in a.succ[p] if q in members]
    if not inner:
        return False
    dist = {p: 0 for p in comp}
    for _ in range(len(comp)):
        changed = False
        for p, w, q in inner:
            if dist[p] + w > dist[q]:
                dist[q] = dist[p] + w
                changed = True
        if not changed:
            return False
    return any(dist[p] + w > dist[q] for p, w, q in inner)


def _shortest_signed_loop(a: Automaton, p: int, sign: int) -> str:
    """Shortest closed walk at ``p`` with weight of the given sign (BFS over (state, weight))."""
    m = a.states
    bound = 2 * m * m + m
    parent: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {(p, 0): None}
    queue = deque([(p, 0)])
    while queue:
        q, w = queue.popleft()
        for x, r in sorted(a.succ[q]):
            w2 = w + WEIGHT[x]
            if abs(w2) > bound or (r, w2) in parent:
                continue
            parent[(r, w2)] = ((q, w), x)
            if r == p and w2 * sign > 0:
                letters = []
                node = (r, w2)
                while parent[node] is not None:
                    node, x = parent[node]
                    letters.append(x)
                return "".join(reversed(letters))
            queue.append((r, w2))
    raise AssertionError(f"no loop of sign {sign} at state {p}")


def loop_states(a: Automaton) -> tuple[dict[int, str], dict[int, str]]:
    """States on closed walks of positive (resp. negative) weight, with a shortest witness loop each."""
    plus: dict[int, str] = {}
    minus: dict[int, str] = {}
    for comp in _sccs(a):
        for sign, table in ((1, plus), (-1, minus)):
            if _has_signed_cycle(a, comp, sign):
                for p in comp:
                    table[p] = _shortest_signed_loop(a, p, sign)
    return dict(sorted(plus.items())), dict(sorted(minus.items()))


def find_word_with_pi(a: Automaton, p: int, image: SemilinearSet | None = None) -> str:
    """A shortest accepted word of weight ``p`` whose running weights stay in a window around ``[0, p]``.

    The window is widened until a witness appears; ``p`` must lie in the image.
    """
    if image is None:
        image = pi_image(a)
    if p not in image:
        raise PreconditionError(f"{p} is not the weight of any accepted word")
    width = 1
    while True:
        word = _windowed_search(a, p, min(0, p) - width, max(0, p) + width)
        if word is not None:
            return word
        width *= 2


def _windowed_search(a: Automaton, target: int, lo: int, hi: int) -> str | None:
    parent: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {}
    queue = deque()
    for i in sorted(a.initial):
        parent[(i, 0)] = None
        queue.append((i, 0))
    while queue:
        q, w = queue.popleft()
        if w == target and q in a.terminal:
            letters = []
            node = (q, w)
            while parent[node] is not None:
                node, x = parent[node]
                letters.append(x)
            return "".join(reversed(letters))
        for x, r in sorted(a.succ[q]):
            w2 = w + WEIGHT[x]
            if lo <= w2 <= hi and (r, w2) not in parent:
                parent[(r, w2)] = ((q, w), x)
                queue.append((r, w2))
    return None
