"""Compare the pure-Python and compiled kernels on ball sweeps and membership searches.

Usage: python benchmarks/bench_kernels.py [--radius 200] [--repeat 3]
"""

import argparse
import random
import time

from fimtool.kernels import _pure
from fimtool.membership import _flat
from fimtool.rataut import compile_expr

try:
    from fimtool.kernels import _ckernel
except ImportError:
    _ckernel = None

EXPRESSIONS = ["(a|A)*", "(aa|AAA)*", "(aA|a)*A*", "a*(Aa)*A*"]


def best_of(repeat, f, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        f(*args)
        best = min(best, time.perf_counter() - start)
    return best


def sweep_args(expr, radius):
    m, initial, terminal, edges = _flat(compile_expr(expr).reduced())
    return (m, initial, terminal, edges, -radius, radius, radius, -radius, radius, radius)


def member_args(expr, rng, count):
    m, initial, terminal, edges = _flat(compile_expr(expr).reduced())
    cases = []
    for _ in range(count):
        lam, rho = -rng.randint(0, 60), rng.randint(0, 60)
        cases.append((m, initial, terminal, edges, lam, rng.randint(lam, rho), rho))
    return cases


def run_members(kernel, cases):
    for case in cases:
        kernel.member_bfs(*case)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--radius", type=int, default=200)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _ckernel is None:
        print("compiled kernel not built; only the pure kernel can run")
    rng = random.Random(0)
    print(f"{'kernel':<12}{'input':<14}{'pure (s)':>10}{'cython (s)':>12}{'speedup':>9}")
    for expr in EXPRESSIONS:
        sargs = sweep_args(expr, args.radius)
        pure = best_of(args.repeat, _pure.ball_sweep, *sargs)
        fast = best_of(args.repeat, _ckernel.ball_sweep, *sargs) if _ckernel else float("nan")
        if _ckernel:
            assert _ckernel.ball_sweep(*sargs) == _pure.ball_sweep(*sargs)
        print(f"{'ball_sweep':<12}{expr:<14}{pure:>10.3f}{fast:>12.3f}{pure / fast:>9.1f}")
        cases = member_args(expr, rng, 200)
        pure = best_of(args.repeat, run_members, _pure, cases)
        fast = best_of(args.repeat, run_members, _ckernel, cases) if _ckernel else float("nan")
        print(f"{'member x200':<12}{expr:<14}{pure:>10.3f}{fast:>12.3f}{pure / fast:>9.1f}")


if __name__ == "__main__":
    main()
