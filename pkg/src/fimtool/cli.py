"""Command-line front end.

Expressions use ``a``, ``A`` (the inverse of ``a``), ``1`` (empty word), ``|``,
``*`` and parentheses.  Anywhere an expression is expected, automaton JSON can
be given inline (starting with ``{``) or as ``@path``.

Decision commands exit with 0 when the property holds, 1 when it fails (a
witness is printed) and 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from fimtool import element as el
from fimtool import munn
from fimtool.cutpaste import DEFAULT_CEILING, constants, harmonize
from fimtool.decide import Verdict, equal, included, is_submonoid
from fimtool.errors import FimError
from fimtool.membership import member_fast, oracle_enumerate
from fimtool.quotient import recognizability
from fimtool.rataut.automaton import Automaton, compile_expr
from fimtool.rataut.weights import Case, pi_image
from fimtool.submonoid import NotSubmonoidError, generators, star_height_one

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2


class _Context:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.ceiling = args.overflow_ceiling if args.overflow_ceiling > 0 else None

    def automaton(self, text: str) -> Automaton:
        if text.startswith("@"):
            with open(text[1:], encoding="utf-8") as fh:
                a = Automaton.from_json(fh.read())
        elif text.lstrip().startswith("{"):
            a = Automaton.from_json(text)
        else:
            a = compile_expr(text)
        a = a.trim()
        limit = self.args.max_states
        if limit is not None and a.states > limit:
            raise FimError(f"automaton has {a.states} states, more than --max-states {limit}")
        return a

    def note(self, message: str) -> None:
        if not self.args.quiet:
            print(message, file=sys.stderr)

    def emit(self, command: str, inputs: dict, result, text: str, witness=None, consts=None) -> None:
        if self.args.json:
            payload = {"command": command, "inputs": inputs, "result": result}
            if consts is not None:
                payload["constants"] = {"n": consts.n, "nprime": consts.nprime}
            if witness is not None:
                payload["witness"] = list(witness)
            print(json.dumps(payload))
        else:
            print(text)

    def announce(self, automata) -> None:
        """Print the window size before a long sweep starts."""
        live = [a for a in automata if not a.is_empty()]
        if not live or self.args.quiet:
            return
        c = harmonize(constants(a) for a in live)
        size = c.nprime**3
        self.note(f"constants: n={c.n}, n'={c.nprime} (window holds about {size} elements)")


def _verdict_exit(ctx: _Context, command: str, inputs: dict, v: Verdict, label: str) -> int:
    if v.holds:
        text = f"{label}: yes"
    else:
        text = f"{label}: no\nwitness: {v.witness} = {el.canonical_word(v.witness) or '1'}"
    ctx.emit(command, inputs, v.holds, text, v.witness, v.constants)
    return EXIT_HOLDS if v.holds else EXIT_FAILS


def cmd_eval(ctx, args) -> int:
    u = el.eval_word(el.parse_word(args.word))
    ctx.emit("eval", {"word": args.word}, list(u), f"{u}\ncanonical word: {el.canonical_word(u) or '1'}")
    return EXIT_HOLDS


def cmd_munn(ctx, args) -> int:
    tree = munn.fold(munn.parse_genword(args.word))
    if args.dot:
        print(munn.to_dot(tree))
        return EXIT_HOLDS
    result = {"vertices": tree.size, "initial": tree.initial, "terminal": tree.terminal, "edges": [list(e) for e in tree.edges]}
    ctx.emit("munn", {"word": args.word}, result, munn.describe(tree))
    return EXIT_HOLDS


def cmd_compile(ctx, args) -> int:
    a = ctx.automaton(args.expr)
    if args.dot:
        print(a.to_dot())
    elif args.json:
        print(a.to_json())
    else:
        print(f"states: {a.states}\ninitial: {sorted(a.initial)}\nterminal: {sorted(a.terminal)}")
        for p, x, q in a.edges:
            print(f"  {p} -{x}-> {q}")
    return EXIT_HOLDS


def cmd_member(ctx, args) -> int:
    a = ctx.automaton(args.expr)
    u = el.parse_element(args.element)
    holds = member_fast(a, u)
    ctx.emit("member", {"expr": args.expr, "element": list(u)}, holds, f"{u} member: {'yes' if holds else 'no'}")
    return EXIT_HOLDS if holds else EXIT_FAILS


def cmd_constants(ctx, args) -> int:
    a = ctx.automaton(args.expr)
    c = constants(a)
    lines = [f"case: {int(c.case)}", f"m: {c.m}", f"n: {c.n}", f"n': {c.nprime}", f"weights: {pi_image(a.reduced())}"]
    result = {"case": int(c.case), "m": c.m, "n": c.n, "nprime": c.nprime}
    if c.case is Case.CASE3:
        lines.append(f"r: {c.r}")
        lines.append(f"loop weights: {list(c.loop_weights)}")
        for name, table in (("positive loops", c.plus_loops), ("negative loops", c.minus_loops)):
            lines.append(f"{name}: " + ", ".join(f"{p}:{w}" for p, w in table.items()))
        result.update(r=c.r, plus_loops=c.plus_loops, minus_loops=c.minus_loops)
    ctx.emit("constants", {"expr": args.expr}, result, "\n".join(lines))
    return EXIT_HOLDS


def cmd_subset(ctx, args) -> int:
    k, l = ctx.automaton(args.left), ctx.automaton(args.right)
    ctx.announce([k, l, k.inverse(), l.inverse()])
    v = included(k, l, ctx.ceiling)
    return _verdict_exit(ctx, "subset", {"left": args.left, "right": args.right}, v, "included")


def cmd_equal(ctx, args) -> int:
    k, l = ctx.automaton(args.left), ctx.automaton(args.right)
    ctx.announce([k, l, k.inverse(), l.inverse()])
    v = equal(k, l, ctx.ceiling)
    return _verdict_exit(ctx, "equal", {"left": args.left, "right": args.right}, v, "equal")


def cmd_is_submonoid(ctx, args) -> int:
    a = ctx.automaton(args.expr)
    ctx.announce([a, a.star(), a.inverse(), a.star().inverse()])
    v = is_submonoid(a, ctx.ceiling)
    return _verdict_exit(ctx, "is-submonoid", {"expr": args.expr}, v, "submonoid")


def cmd_is_recognizable(ctx, args) -> int:
    a = ctx.automaton(args.expr)
    report = recognizability(a, ctx.ceiling)
    ctx.note(f"quotient: K={report.K}, n={report.n}, sweep radius {report.radius}")
    if args.show_monoid:
        seen = sorted(report.quotient.elements_seen(), key=lambda x: (x.cycle, x.size, x.initial, x.terminal))
        print(f"# {len(seen)} elements of <a | a^{report.K + report.n} = a^{report.K}> met during the sweep")
        for x in seen:
            print(f"{x}  size={x.size}  rep={x.rep or '1'}")
    return _verdict_exit(ctx, "is-recognizable", {"expr": args.expr}, report.verdict, "recognizable")


def cmd_generators(ctx, args) -> int:
    a = ctx.automaton(args.expr)
    try:
        gens = generators(a, ctx.ceiling, certify=args.certify, do_prune=args.prune)
    except NotSubmonoidError as exc:
        ctx.emit("generators", {"expr": args.expr}, None, f"not a submonoid; witness {exc.witness}", exc.witness)
        return EXIT_FAILS
    certified = gens.certificate.holds if gens.certificate is not None else None
    result = {
        "case": gens.case,
        "ball_radius": gens.radius,
        "ball_size": len(gens.X),
        "generators": [list(g) for g in gens.G],
        "words": gens.words,
        "certified": certified,
    }
    lines = [f"case: {gens.case}", f"ball radius: {gens.radius}", f"ball size |X|: {len(gens.X)}", "generators:"]
    lines += [f"  {g}  {w or '1'}" for g, w in zip(gens.G, gens.words)]
    if certified is not None:
        lines.append(f"certified G* = input: {'yes' if certified else 'no'}")
    ctx.emit("generators", {"expr": args.expr}, result, "\n".join(lines), consts=gens.constants)
    return EXIT_HOLDS


def cmd_star_height_one(ctx, args) -> int:
    out = star_height_one(args.expr, ctx.ceiling)
    ctx.emit("star-height-one", {"expr": args.expr}, str(out), str(out))
    return EXIT_HOLDS


def cmd_oracle(ctx, args) -> int:
    a = ctx.automaton(args.expr)
    found = sorted(oracle_enumerate(a, args.maxlen), key=lambda u: (u.norm, u.pi, u.lam))
    ctx.emit("oracle", {"expr": args.expr, "maxlen": args.maxlen}, [list(u) for u in found], "\n".join(str(u) for u in found))
    return EXIT_HOLDS


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommand copies must not overwrite flags given before the subcommand
        common = argparse.ArgumentParser(add_help=False)

        def default(value):
            return argparse.SUPPRESS if suppress else value

        common.add_argument("--json", action="store_true", default=default(False), help="machine-readable output")
        common.add_argument("--dot", action="store_true", default=default(False), help="Graphviz output where available")
        common.add_argument("--quiet", action="store_true", default=default(False), help="no progress notes on stderr")
        common.add_argument("--max-states", type=int, default=default(None), help="refuse larger automata")
        common.add_argument(
            "--overflow-ceiling",
            type=int,
            default=default(DEFAULT_CEILING),
            help="largest n' to enumerate (0 = unlimited)",
        )
        return common

    common = flags(suppress=True)
    parser = argparse.ArgumentParser(prog="fimtool", description=__doc__.splitlines()[0], parents=[flags(suppress=False)])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("eval", cmd_eval, "word", help="evaluate a word to (lam,pi,rho)")
    add("munn", cmd_munn, "word", help="Munn tree of a word over any alphabet")
    add("compile", cmd_compile, "expr", help="compile an expression to an automaton")
    add("member", cmd_member, "expr", "element", help="membership of a word or triple")
    add("constants", cmd_constants, "expr", help="cut-and-paste constants")
    add("subset", cmd_subset, "left", "right", help="inclusion of subsets")
    add("equal", cmd_equal, "left", "right", help="equality of subsets")
    add("is-submonoid", cmd_is_submonoid, "expr", help="closure under product")
    p = add("is-recognizable", cmd_is_recognizable, "expr", help="recognizability")
    p.add_argument("--show-monoid", action="store_true", help="list quotient elements met")
    p = add("generators", cmd_generators, "expr", help="finite generating set of a submonoid")
    p.add_argument("--certify", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--prune", action="store_true", help="drop redundant generators")
    add("star-height-one", cmd_star_height_one, "expr", help="rewrite with star height at most one")
    p = add("oracle", cmd_oracle, "expr", help="evaluate all accepted words up to a length")
    p.add_argument("--maxlen", type=int, default=8)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_HOLDS
    ctx = _Context(args)
    try:
        return args.func(ctx, args)
    except (FimError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
