"""Finite generating sets for rational submonoids, and star-height-one rewriting."""

from __future__ import annotations

from dataclasses import dataclass, field

from fimtool import element as el
from fimtool.cutpaste import DEFAULT_CEILING, Constants, adjust, check_ceiling, constants, harmonize
from fimtool.decide import Verdict, equal, is_submonoid
from fimtool.element import Element
from fimtool.errors import PreconditionError
from fimtool.membership import Bounds, ElementSet, enumerate_ball, member_fast
from fimtool.rataut.automaton import Automaton, compile_expr, star_of_words
from fimtool.rataut.expr import Concat, Literal, RatExpr, Star, Union, literal_union, parse
from fimtool.rataut.weights import find_word_with_pi, pi_image, subgroup_gcd

CERTIFY_LIMIT = 64


class NotSubmonoidError(PreconditionError):
    def __init__(self, witness: Element | None):
        self.witness = witness
        super().__init__(f"not a submonoid (witness {witness})")


@dataclass(frozen=True)
class PiSubgroup:
    p: int
    u: Element
    u_prime: Element
    u_sym: Element


@dataclass
class GeneratorSet:
    case: int
    X: ElementSet
    G: list[Element]
    constants: Constants | None = None
    radius: int | None = None
    subgroup: PiSubgroup | None = None
    certificate: Verdict | None = field(default=None)

    @property
    def words(self) -> list[str]:
        return [el.short_word(x) for x in self.G]


def pi_subgroup(a: Automaton) -> PiSubgroup:
    """Generator ``p`` of the weight subgroup, with ``u`` of weight ``p`` whose inverse is also accepted."""
    image = pi_image(a)
    if not (image.positive_infinite and image.negative_infinite):
        raise PreconditionError(f"weights {image} do not reach both signs")
    p = subgroup_gcd(image)
    u = el.eval_word(find_word_with_pi(a, p, image))
    u_prime = el.eval_word(find_word_with_pi(a, -p, image))
    u_sym = el.product(u, u_prime, u)
    if not (member_fast(a, u_sym) and member_fast(a, el.inverse(u_sym))):
        raise PreconditionError(f"{u_sym} or its inverse is not accepted; is the input a submonoid?")
    return PiSubgroup(p, u, u_prime, u_sym)


def _key(u: Element):
    return (u.norm, -abs(u.pi), -u.pi, u.lam)


def _reduce(X: ElementSet, radius: int) -> list[Element]:
    """Greedy subset ``G`` of ``X`` whose star contains ``X``: add the least element not yet generated."""
    G: list[Element] = []
    box = Bounds(norm_max=radius)
    while True:
        generated = enumerate_ball(star_of_words(el.short_word(g) for g in G), box)
        missing = X - generated
        if not missing:
            return sorted(G, key=_key)
        G.append(missing.least(_key))


def prune(G: list[Element]) -> list[Element]:
    """Drop generators already produced by the others."""
    kept = list(G)
    for x in sorted(G, key=_key, reverse=True):
        rest = [g for g in kept if g != x]
        if member_fast(star_of_words(el.short_word(g) for g in rest), x):
            kept = rest
    return sorted(kept, key=_key)


def generators(
    a: Automaton,
    ceiling: int | None = DEFAULT_CEILING,
    certify: bool | None = None,
    do_prune: bool = False,
) -> GeneratorSet:
    """A finite ``X`` with ``X* = M`` for a rational submonoid ``M``, plus a small ``G`` with ``G* = X*``."""
    verdict = is_submonoid(a, ceiling)
    if not verdict:
        raise NotSubmonoidError(verdict.witness)
    a = a.reduced()
    K = a.states
    image = pi_image(a)
    flip = False
    c = None
    sub = None
    if not image.positive_infinite and not image.negative_infinite:
        # the weight image of a submonoid is a submonoid of Z, so it is {0} here
        case = 1
        box = Bounds(lam_min=-K + 1, rho_max=K - 1)
        radius = box.norm_max
    elif not image.positive_infinite or not image.negative_infinite:
        case = 2
        b = a
        if not image.positive_infinite:
            b, flip = a.inverse(), True
        c = harmonize([constants(b), constants(b.beta())])
        radius = (c.n + 1) * c.nprime + c.n**2 + 2 * K
        check_ceiling(Constants(1, radius), ceiling, "ball radius")
        box = Bounds.ball(radius)
        a = b
    else:
        case = 3
        sub = pi_subgroup(a)
        c = adjust(constants(a), sub.p, max(sub.u_sym.norm, K))
        radius = 18 * c.nprime
        check_ceiling(Constants(1, radius), ceiling, "ball radius")
        box = Bounds.ball(radius)
    X = enumerate_ball(a, box)
    G = _reduce(X, box.norm_max)
    if do_prune:
        G = prune(G)
    if flip:
        X = X.map(el.inverse)
        G = sorted((el.inverse(g) for g in G), key=_key)
        a = a.inverse()
    for g in G:
        assert member_fast(a, g)
    result = GeneratorSet(case, X, G, c, radius, sub)
    if certify is None:
        certify = len(G) <= CERTIFY_LIMIT
    if certify:
        result.certificate = equal(star_of_words(result.words), a, ceiling)
        if not result.certificate:
            raise AssertionError(f"generators failed certification: {result.certificate.witness}")
    return result


def _star_free(e: RatExpr, ceiling: int | None) -> RatExpr:
    if isinstance(e, Literal):
        return e
    if isinstance(e, Union):
        return Union(tuple(_star_free(p, ceiling) for p in e.parts))
    if isinstance(e, Concat):
        return Concat(tuple(_star_free(p, ceiling) for p in e.parts))
    if isinstance(e, Star):
        gens = generators(compile_expr(e), ceiling)
        words = [w for w in gens.words if w]
        if not words:
            return Literal("")
        return Star(literal_union(words))
    raise TypeError(f"not a rational expression: {e!r}")


def star_height_one(e: RatExpr | str, ceiling: int | None = DEFAULT_CEILING) -> RatExpr:
    """Replace every outermost star by a star over finitely many words; the result is checked equal."""
    if isinstance(e, str):
        e = parse(e)
    out = _star_free(e, ceiling)
    verdict = equal(compile_expr(out), compile_expr(e), ceiling)
    if not verdict:
        raise AssertionError(f"rewritten expression differs at {verdict.witness}")
    return out
