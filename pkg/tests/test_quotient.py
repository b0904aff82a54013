import random

import pytest

from fimtool import element as el
from fimtool.element import Element
from fimtool.errors import PreconditionError
from fimtool.quotient import (
    Quotient,
    close_word,
    is_recognizable,
    m_equal,
    m_inverse,
    m_multiply,
    phi_image,
    recognizability,
    stephen_close,
)
from fimtool.rataut import EMPTY, compile_expr
from tests.conftest import random_element, sample_G

GRID = [(1, 1), (3, 2), (6, 2)]


def test_idempotent_generator_collapse():
    a, A = stephen_close(Element(0, 1, 1), 1, 1), stephen_close(Element(-1, -1, 0), 1, 1)
    aA = stephen_close(el.eval_word("aA"), 1, 1)
    Aa = stephen_close(el.eval_word("Aa"), 1, 1)
    assert m_equal(a, A) and m_equal(a, aA) and m_equal(a, Aa)
    values = {stephen_close(Element(lam, pi, rho), 1, 1) for lam in range(-4, 1) for rho in range(0, 5 + lam) for pi in range(lam, rho + 1)}
    assert len(values) == 2


def test_short_elements_stay_paths():
    u = Element(-2, 1, 2)
    x = stephen_close(u, 5, 2)
    assert not x.cycle and x.size == u.norm + 1
    assert (x.initial, x.terminal) == (2, 3)


@pytest.mark.parametrize("K, n", [(1, 1), (3, 2), (12, 2)])
def test_defining_relation(K, n):
    assert m_equal(stephen_close(Element(0, K + n, K + n), K, n), stephen_close(Element(0, K, K), K, n))
    assert m_equal(close_word("a" * (K + n), K, n), close_word("a" * K, K, n))


def test_identity_and_mixed_parameters():
    rng = random.Random(2)
    for _ in range(50):
        u = random_element(rng, 8)
        x = stephen_close(u, 3, 2)
        assert m_multiply(x, stephen_close(el.IDENTITY, 3, 2)) == x
    with pytest.raises(PreconditionError):
        m_multiply(stephen_close(el.IDENTITY, 1, 1), stephen_close(el.IDENTITY, 2, 1))
    with pytest.raises(PreconditionError):
        Quotient(0, 1)


@pytest.mark.parametrize("K, n", GRID)
def test_homomorphism_relation_and_involution(K, n):
    rng = random.Random(K * 10 + n)
    q = Quotient(K, n)
    for _ in range(150):
        u, v = random_element(rng, 2 * (K + n)), random_element(rng, 2 * (K + n))
        uv = q.phi(el.multiply(u, v))
        assert uv == m_multiply(q.phi(u), q.phi(v))
        assert m_equal(uv, m_multiply(stephen_close(u, K, n), stephen_close(v, K, n)))
        assert q.phi(el.inverse(u)) == m_inverse(q.phi(u))
        assert stephen_close(u, K, n) == q.phi(u)


@pytest.mark.parametrize("K, n", GRID)
def test_saturation(K, n):
    rng = random.Random(K + 7 * n)
    q = Quotient(K, n)
    for i in (1, 2, 3):
        for _ in range(40):
            u = sample_G(rng, K + 2 * n, i, 3 * (K + n))
            assert q.phi(u) == q.phi(el.xi(u, n, i))


@pytest.mark.parametrize("K, n", [(1, 1), (3, 2)])
def test_short_representatives(K, n):
    q = Quotient(K, n)
    bound = 3 * (K + n)
    small = {q.phi(Element(lam, pi, rho)) for lam in range(-bound, 1) for rho in range(0, bound + lam + 1) for pi in range(lam, rho + 1)}
    rng = random.Random(9)
    for _ in range(200):
        assert q.phi(random_element(rng, 6 * (K + n))) in small


def test_phi_image_examples():
    assert phi_image(compile_expr("1"), 2, 1) == {stephen_close(el.IDENTITY, 2, 1)}
    q = Quotient(12, 1)
    assert phi_image(compile_expr("a*"), 12, 1, q) == {q.phi(Element(0, k, k)) for k in range(13)}
    assert phi_image(EMPTY, 3, 1) == set()


def test_dot_and_str():
    x = stephen_close(Element(0, 4, 4), 2, 1)
    assert x.cycle
    assert "cycle" in str(x)
    assert x.to_dot().startswith("digraph")


@pytest.mark.parametrize("expr, holds", [("a*", False), ("(a|A)*", True), ("1", True)])
def test_recognizability(expr, holds):
    report = recognizability(compile_expr(expr))
    assert report.verdict.holds is holds
    assert report.K == 3 * report.verdict.constants.nprime
    if not holds:
        # the witness is outside the subset but has the same image as some member
        w = report.verdict.witness
        assert not compile_expr(expr).accepts(el.canonical_word(w))
        assert report.quotient.phi(w) in phi_image(compile_expr(expr), report.K, report.n, report.quotient)


def test_empty_is_recognizable():
    assert is_recognizable(EMPTY)
