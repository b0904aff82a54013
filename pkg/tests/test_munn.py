import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fimtool import element as el
from fimtool import munn
from fimtool.errors import ParseError

two_letter = st.text(alphabet="abAB", max_size=14)


def test_fold_single_letter():
    t = munn.fold("a")
    assert (t.size, t.edges, t.initial, t.terminal) == (2, ((0, "a", 1),), 0, 1)


def test_fold_idempotent_pair():
    t = munn.fold("aA")
    assert t.size == 2 and t.initial == t.terminal == 0
    assert t.is_idempotent


def test_fold_six_vertex_tree():
    t = munn.fold("abbBAaaA")
    assert t.size == 6 and t.norm == 5
    assert t.initial != t.terminal
    # initial -a-> v -b-> terminal; from the terminal: b to a leaf, a down, and an a-edge coming in
    v = t.out[t.initial]["a"]
    assert t.out[v]["b"] == t.terminal
    hub = t.terminal
    assert set(t.out[hub]) == {"a", "b"} and set(t.inn[hub]) == {"a", "b"}
    leaves = [t.out[hub]["a"], t.out[hub]["b"], t.inn[hub]["a"]]
    assert all(len(t.out[x]) + len(t.inn[x]) == 1 for x in leaves)


@pytest.mark.parametrize("u, v, expected", [("a", "aAa", True), ("aAbB", "bBaA", True), ("ab", "ba", False)])
def test_words_equal(u, v, expected):
    assert munn.words_equal(u, v) is expected


def test_embeds_examples():
    assert munn.embeds(munn.fold("aa").shape(), munn.fold("aaa").shape())
    # a-then-b and b-then-a paths differ at the middle vertex, whatever the anchor
    assert not munn.embeds(munn.fold("ab").shape(), munn.fold("ba").shape())
    assert not any(
        munn.isomorphic(munn.MunnTree(3, munn.fold("ab").edges, 0, 0), munn.MunnTree(3, munn.fold("ba").edges, k, k))
        for k in range(3)
    )
    assert not munn.embeds(munn.fold("abb").shape(), munn.fold("ab").shape())


def test_parse_genword():
    assert munn.parse_genword("a bB") == "abB"
    assert munn.parse_genword("1") == ""
    with pytest.raises(ParseError):
        munn.parse_genword("ac", alphabet="ab")


def test_dot_output():
    dot = munn.to_dot(munn.fold("abB"))
    assert dot.startswith("digraph") and '[label="b"]' in dot


@given(two_letter)
def test_tree_shape_invariants(w):
    t = munn.fold(w)
    assert len(t.edges) == t.size - 1
    for v in range(t.size):
        outs = [x for s, x, _ in t.edges if s == v]
        ins = [x for _, x, d in t.edges if d == v]
        assert len(outs) == len(set(outs)) and len(ins) == len(set(ins))


@given(two_letter, st.randoms(use_true_random=False))
def test_fold_order_independent(w, r):
    assert munn.fold(w, rng=r) == munn.fold(w)


@given(st.text(alphabet="aA", max_size=25))
def test_monogenic_tree_is_the_triple(w):
    assert munn.to_element(munn.fold(w)) == el.eval_word(w)


@given(two_letter, two_letter, two_letter)
def test_congruence_and_equivalence(u, v, w):
    if munn.words_equal(u, v):
        assert munn.words_equal(u + w, v + w)
        assert munn.words_equal(w + u, w + v)
        assert munn.words_equal(v, u)
    assert munn.words_equal(u, u)


@given(two_letter, two_letter)
def test_multiply_inverse_and_word_round_trip(u, v):
    x, y = munn.fold(u), munn.fold(v)
    assert munn.multiply(x, y) == munn.fold(u + v)
    assert munn.inverse(x) == munn.fold(munn.invert_word(u))
    assert munn.fold(x.word()) == x
    z = x
    for ch in v:
        z = z.times_letter(ch)
    assert z == munn.fold(u + v)


@given(two_letter, two_letter)
def test_mutual_embedding_iff_same_shape(u, v):
    x, y = munn.fold(u).shape(), munn.fold(v).shape()
    mutual = munn.leq_J_general(u, v) and munn.leq_J_general(v, u)
    rooted = (munn.MunnTree(y.size, y.edges, k, k) for k in range(y.size))
    assert mutual == any(munn.isomorphic(x, z) for z in rooted)


def test_leq_J_matches_norm_on_one_letter():
    rng = random.Random(7)
    for _ in range(300):
        u = "".join(rng.choice("aA") for _ in range(rng.randint(0, 12)))
        v = "".join(rng.choice("aA") for _ in range(rng.randint(0, 12)))
        assert munn.leq_J_general(u, v) == el.leq_J(el.eval_word(u), el.eval_word(v))
