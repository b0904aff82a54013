import random

import pytest

from fimtool.element import Element
from fimtool.rataut import Automaton


def random_automaton(rng: random.Random, max_states: int = 4, max_edges: int | None = None) -> Automaton:
    m = rng.randint(1, max_states)
    limit = max_edges if max_edges is not None else 2 * m + 2
    edges = [(rng.randrange(m), rng.choice("aA"), rng.randrange(m)) for _ in range(rng.randint(1, limit))]
    initial = rng.sample(range(m), rng.randint(1, m))
    terminal = rng.sample(range(m), rng.randint(1, m))
    return Automaton(m, initial, terminal, edges)


def random_word(rng: random.Random, max_len: int, letters: str = "aA") -> str:
    return "".join(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def random_element(rng: random.Random, max_norm: int) -> Element:
    norm = rng.randint(0, max_norm)
    lam = -rng.randint(0, norm)
    rho = lam + norm
    return Element(lam, rng.randint(lam, rho), rho)


@pytest.fixture
def rng():
    return random.Random(20261015)


def sample_G(rng: random.Random, nprime: int, i: int, max_norm: int) -> Element:
    """A random element of F+ whose arm ``i`` has length at least ``nprime`` and whose norm is at most ``max_norm``."""
    N = max_norm
    if i == 1:
        lam = -rng.randint(nprime, N)
        pi = rng.randint(0, N + lam)
        return Element(lam, pi, rng.randint(pi, N + lam))
    if i == 2:
        pi = rng.randint(nprime, N)
        rho = rng.randint(pi, N)
        return Element(-rng.randint(0, N - rho), pi, rho)
    gap = rng.randint(nprime, N)
    lam = -rng.randint(0, N - gap)
    pi = rng.randint(0, N - gap + lam)
    return Element(lam, pi, pi + gap)


def random_expr(rng: random.Random, depth: int = 2) -> str:
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(["a", "A", "1", "aA", "Aa", "aa", "AA"])
    left, right = random_expr(rng, depth - 1), random_expr(rng, depth - 1)
    kind = rng.random()
    if kind < 0.35:
        return f"({left}|{right})"
    if kind < 0.7:
        return f"({left})({right})"
    return f"({left})*"


def feasible_pairs(rng: random.Random, count: int, limit: int = 300) -> list[tuple[str, str]]:
    """Random expression pairs whose harmonized window (including the union) stays within ``limit``."""
    from fimtool.cutpaste import constants, harmonize
    from fimtool.rataut import compile_expr

    pairs = []
    while len(pairs) < count:
        e1, e2 = random_expr(rng), random_expr(rng)
        autos = [compile_expr(e) for e in (e1, e2, f"{e1}|{e2}")]
        sides = [x for a in autos for x in (a, a.inverse())]
        if harmonize(constants(x) for x in sides).nprime <= limit:
            pairs.append((e1, e2))
    return pairs


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
