"""Compare the compiled kernels with the pure-Python fallback.

Run:  python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import argparse
import random
import timeit

from cellalg import _kernels_py

try:
    from cellalg import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None


def _random_rgs(rng, k):
    out, top = [], -1
    for _ in range(k):
        v = rng.randint(0, top + 1)
        top = max(top, v)
        out.append(v)
    return tuple(out)


def compose_case(rng, n, m):
    cases = []
    for _ in range(200):
        a = _random_rgs(rng, 2 * n)
        b = _random_rgs(rng, 2 * n)
        mid = tuple(rng.randrange(m) for _ in range(n))
        cases.append((a, b, n, n, n, mid, m))
    return cases


def rref_case(rng, size, p):
    return [[rng.randrange(p) for _ in range(size)] for _ in range(size)]


def bench(impl, cases, reps):
    def run():
        for c in cases:
            impl.compose_partitions(*c)

    return min(timeit.repeat(run, number=reps, repeat=3)) / (reps * len(cases))


def bench_rref(impl, mat, p, reps):
    def run():
        impl.rref_modp([row[:] for row in mat], len(mat[0]), p)

    return min(timeit.repeat(run, number=reps, repeat=3)) / reps


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    impls = [("pure", _kernels_py)]
    if _compiled is not None:
        impls.append(("compiled", _compiled))
    else:
        print("compiled extension not available; only the fallback is timed")

    print(f"{'kernel':<34}" + "".join(f"{name:>14}" for name, _ in impls) + f"{'speedup':>10}")
    for n, m in ((4, 2), (8, 3), (16, 2)):
        cases = compose_case(rng, n, m)
        times = [bench(impl, cases, 20) for _, impl in impls]
        row = f"{'compose_partitions n=%d m=%d' % (n, m):<34}" + "".join(f"{t * 1e6:>12.2f}us" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)
    for size, p in ((60, 10007), (150, 2305843009213693951)):
        mat = rref_case(rng, size, p)
        times = [bench_rref(impl, mat, p, 2) for _, impl in impls]
        row = f"{'rref_modp %dx%d p~2^%d' % (size, size, p.bit_length()):<34}" + "".join(
            f"{t * 1e3:>12.2f}ms" for t in times
        )
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
