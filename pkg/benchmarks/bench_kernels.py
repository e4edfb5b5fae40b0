"""Compare the compiled and pure-Python elimination kernels.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 20 40 60]

Both kernels run on the same integer matrices: random dense ones and the
coboundary matrices of a few catalog complexes.  Results are checked for
equality before any timing is reported.
"""

import argparse
import random
import sys
import timeit

from homanti import _kernels_py
from homanti.catalog import k1, twisted_k1
from homanti.cohomology import assemble_d
from homanti.linalg import MODULAR_PRIMES, integer_rows
from homanti.representation import adjoint_representation, semidirect

try:
    from homanti import _kernels as compiled
except ImportError:
    compiled = None


def random_rows(rng, n, m, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)]


def workloads(sizes, seed):
    rng = random.Random(seed)
    for n in sizes:
        yield f"random {n}x{n}", random_rows(rng, n, n), n
        # rank-deficient: product of thin factors
        left, right = random_rows(rng, n, n // 2, 3), random_rows(rng, n // 2, n, 3)
        prod = [[sum(x * y for x, y in zip(row, col)) for col in zip(*right)] for row in left]
        yield f"rank {n // 2} of {n}x{n}", prod, n
    big = semidirect(k1(), adjoint_representation(k1()))
    for name, a in (("K(1)", k1()), ("K(1) twisted 3", twisted_k1(3)), ("K(1)+adjoint", big)):
        rho = adjoint_representation(a)
        for k in (2, 3):
            mat = assemble_d(a, rho, k).matrix
            if mat.rows and mat.cols:
                yield f"d^{k} on {name} ({mat.rows}x{mat.cols})", integer_rows(mat), mat.cols


def bench(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05 and number < 10 ** 5:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 40])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if compiled is None:
        print("compiled kernels are not built; only the pure-Python kernels are available", file=sys.stderr)
        return 1
    p = MODULAR_PRIMES[0]
    print(f"{'workload':<34} {'kernel':<8} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}")
    for label, rows, ncols in workloads(args.sizes, args.seed):
        for kname, call in (
            ("bareiss", lambda mod, r=rows, c=ncols: mod.bareiss_echelon(r, c)),
            ("mod p", lambda mod, r=rows, c=ncols: mod.modular_rank(r, c, p)),
        ):
            if call(_kernels_py) != call(compiled):
                print(f"MISMATCH on {label} / {kname}", file=sys.stderr)
                return 1
            tp = bench(lambda: call(_kernels_py), args.repeat)
            tc = bench(lambda: call(compiled), args.repeat)
            print(f"{label:<34} {kname:<8} {tp * 1e3:>12.3f} {tc * 1e3:>12.3f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
