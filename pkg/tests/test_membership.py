import random

import pytest

from fimtool import element as el
from fimtool import munn
from fimtool.element import Element
from fimtool.membership import (
    Bounds,
    ElementSet,
    FreeInverseMonoid,
    FreeMonogenic,
    enumerate_ball,
    member_fast,
    member_jabove,
    oracle_enumerate,
)
from fimtool.rataut import EMPTY, Automaton, compile_expr
from tests.conftest import random_automaton, random_element

F = FreeMonogenic()
FIM = FreeInverseMonoid()


@pytest.mark.parametrize(
    "expr, u, expected",
    [("1", (0, 0, 0), True), ("(aA)*", (0, 0, 1), True), ("(aA)*", (0, 1, 1), False), ("Aa", (-1, 0, 0), True), ("a", (0, 0, 0), False)],
)
def test_membership_examples(expr, u, expected):
    a = compile_expr(expr)
    u = Element(*u)
    assert member_fast(a, u) is expected
    assert member_jabove(F, a, u) is expected
    assert member_jabove(FIM, a, munn.fold(el.canonical_word(u))) is expected


def test_triple_agreement_small(rng):
    for _ in range(300):
        a = random_automaton(rng)
        u = random_element(rng, 4)
        fast = member_fast(a, u)
        assert fast == member_jabove(F, a, u)
        assert fast == member_jabove(FIM, a, munn.fold(el.canonical_word(u)))
        maxlen = 4 * a.states * (u.norm + 1)
        assert fast == (u in oracle_enumerate(a, maxlen, max_norm=u.norm))


def test_fim_membership_two_letters():
    rng = random.Random(11)
    for _ in range(150):
        m = rng.randint(1, 3)
        edges = [(rng.randrange(m), rng.choice("abAB"), rng.randrange(m)) for _ in range(rng.randint(1, 2 * m + 1))]
        a = Automaton(m, rng.sample(range(m), rng.randint(1, m)), rng.sample(range(m), rng.randint(1, m)), edges)
        target = "".join(rng.choice("abAB") for _ in range(rng.randint(0, 5)))
        t = munn.fold(target)
        # words of length up to 10 suffice: every accepted witness can be shortened below this for such small inputs
        found = False
        layer = {(i, munn.fold("")) for i in a.initial}
        for _ in range(11):
            found |= any(q in a.terminal and x == t for q, x in layer)
            layer = {(r, x.times_letter(ch)) for q, x in layer for ch, r in a.succ[q] if munn.embeds(x.times_letter(ch).shape(), t.shape())}
        assert member_jabove(FIM, a, t) == found


def test_enumerate_ball_examples():
    assert enumerate_ball(compile_expr("(aA)*"), Bounds.ball(2)) == ElementSet([(0, 0, 0), (0, 0, 1)])
    assert set(enumerate_ball(compile_expr("a*"), Bounds.window(4))) == {Element(0, k, k) for k in range(4)}
    assert not enumerate_ball(EMPTY, Bounds.ball(3))


def test_oracle_examples():
    assert oracle_enumerate(compile_expr("aA"), 2) == {(0, 0, 1)}
    assert oracle_enumerate(compile_expr("a*"), 3) == {Element(0, k, k) for k in range(4)}
    assert oracle_enumerate(compile_expr("1|a"), 0) == {(0, 0, 0)}


def test_enumerate_ball_matches_oracle(rng):
    for _ in range(150):
        a = random_automaton(rng)
        radius = rng.randint(0, 5)
        box = Bounds(lam_min=-rng.randint(0, radius), rho_max=rng.randint(0, radius), norm_max=radius)
        ball = enumerate_ball(a, box)
        oracle = {u for u in oracle_enumerate(a, 14, max_norm=radius) if box.admits(u)}
        assert oracle <= set(ball)
        assert all(member_fast(a, u) and box.admits(u) for u in ball)


def test_bounds_reject_infinite():
    with pytest.raises(ValueError):
        Bounds()
    assert Bounds(lam_min=-2, rho_max=3).norm_max == 5


def test_element_set_operations():
    s = ElementSet([(0, 0, 1), (-1, 0, 0), (0, 1, 1)])
    t = ElementSet([(0, 1, 1)])
    assert len(s) == 3 and (0, 0, 1) in s and (0, 0, 2) not in s
    assert t <= s and not s <= t
    assert set(s - t) == {(0, 0, 1), (-1, 0, 0)}
    assert (s - t) | t == s
    assert s.least(lambda u: (u.norm, u.pi, u.lam)) == (-1, 0, 0)
    assert s.least(lambda u: (u.norm, -u.lam)) == (0, 0, 1)
    assert s.map(el.inverse) == ElementSet([(0, 0, 1), (-1, 0, 0), (-1, -1, 0)])
    assert ElementSet().least(lambda u: u) is None


def test_validation_rejects_bad_triples():
    with pytest.raises(ValueError):
        member_fast(compile_expr("a"), Element(1, 0, 0))
