"""Rational expressions, automata and their integer weight analysis."""

from fimtool.rataut.automaton import (
    EMPTY,
    Automaton,
    chain,
    compile_expr,
    single_state,
    star_of_words,
)
from fimtool.rataut.expr import Concat, Literal, RatExpr, Star, Union, literal_union, parse, star_height
from fimtool.rataut.weights import (
    Case,
    SemilinearSet,
    find_word_with_pi,
    loop_states,
    pi_image,
    sign_case,
    subgroup_gcd,
)


def inverse_automaton(a: Automaton) -> Automaton:
    return a.inverse()


def beta_automaton(a: Automaton) -> Automaton:
    return a.beta()


__all__ = [
    "EMPTY",
    "Automaton",
    "Case",
    "Concat",
    "Literal",
    "RatExpr",
    "SemilinearSet",
    "Star",
    "Union",
    "beta_automaton",
    "chain",
    "compile_expr",
    "find_word_with_pi",
    "inverse_automaton",
    "literal_union",
    "loop_states",
    "parse",
    "pi_image",
    "sign_case",
    "single_state",
    "star_height",
    "star_of_words",
    "subgroup_gcd",
]
