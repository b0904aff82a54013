"""Cut-and-paste constants: a pair ``n' >= n >= 1`` such that shortening an arm
of length at least ``n'`` by ``n`` edges never changes membership."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from fimtool import element as el
from fimtool.errors import ConstantOverflowError, EmptyLanguageError, PreconditionError
from fimtool.rataut.automaton import Automaton
from fimtool.rataut.weights import Case, loop_states, pi_image, sign_case

DEFAULT_CEILING = 4096


@dataclass(frozen=True)
class Constants:
    n: int
    nprime: int
    case: Case | None = None
    m: int | None = None
    loop_weights: tuple[int, ...] = ()
    r: int | None = None
    plus_loops: dict = field(default_factory=dict, compare=False)
    minus_loops: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not (self.nprime >= self.n >= 1):
            raise PreconditionError(f"need n' >= n >= 1, got n={self.n}, n'={self.nprime}")

    @property
    def pair(self) -> tuple[int, int]:
        return self.n, self.nprime

    def __str__(self) -> str:
        case = f"case {int(self.case)}, " if self.case is not None else ""
        return f"{case}n={self.n}, n'={self.nprime}"


def constants(a: Automaton) -> Constants:
    """Constants for the subset accepted by ``a`` (which must be nonempty)."""
    a = a.reduced()
    if a.states == 0:
        raise EmptyLanguageError("constants are undefined for the empty subset")
    m = a.states
    case = sign_case(pi_image(a))
    if case is Case.CASE1:
        return Constants(2 * m, 4 * m, case, m)
    if case is Case.CASE2:
        n = math.factorial(m)
        return Constants(n, (m + 3) * n, case, m)
    plus, minus = loop_states(a)
    weights = [abs(el.eval_word(w).pi) for w in list(plus.values()) + list(minus.values())]
    n = math.lcm(*weights)
    norms = [m]
    for w in list(plus.values()) + list(minus.values()):
        u = el.eval_word(w)
        norms.append(el.power(u, n // abs(u.pi)).norm)
    r = max(norms)
    return Constants(n, 2 * (m**4 * n + r), case, m, tuple(sorted(set(weights))), r, plus, minus)


def harmonize(cs) -> Constants:
    """One pair valid for every input at once: lcm of the ``n`` values, largest ``n'`` plus ``n``."""
    cs = list(cs)
    if not cs:
        raise PreconditionError("harmonize needs at least one set of constants")
    n = math.lcm(*(c.n for c in cs))
    nprime = max(c.nprime for c in cs) + n
    cases = {c.case for c in cs}
    case = cases.pop() if len(cases) == 1 else None
    return Constants(n, nprime, case)


def adjust(c: Constants, d: int = 1, min_nprime: int = 0) -> Constants:
    """Scale ``n`` by some ``k >= 2`` so that ``d | n``, then raise ``n'``."""
    if d < 1:
        raise PreconditionError(f"divisor must be positive, got {d}")
    k = math.lcm(c.n, d) // c.n
    if k == 1:
        k = 2
    n = k * c.n
    return replace(c, n=n, nprime=max(min_nprime, c.nprime) + n)


def check_ceiling(c: Constants, ceiling: int | None = DEFAULT_CEILING, what: str = "n'") -> None:
    """Refuse enumeration when the window would be too large."""
    if ceiling is not None and c.nprime > ceiling:
        raise ConstantOverflowError(
            f"{what} = {c.nprime} exceeds the ceiling {ceiling}; raise --overflow-ceiling to proceed",
            c.nprime,
            ceiling,
        )
