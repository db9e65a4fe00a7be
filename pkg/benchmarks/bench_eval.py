"""Compare the numba and numpy batch kernels.

Usage: python3 benchmarks/bench_eval.py [--points N] [--repeat R]
"""

import argparse
import time

import numpy as np

from ps12 import _kernels
from ps12.calculus import eval_derivatives_many
from ps12.geometry import Point2, Triangle
from ps12.sbasis import ALL_BASES, eval_basis_many


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    t = Triangle(Point2(0.0, 0.0), Point2(1.3, 0.2), Point2(0.4, 1.1))
    rng = np.random.default_rng(0)
    xs = rng.dirichlet((1, 1, 1), size=args.points) @ np.array([t.p1, t.p2, t.p3], dtype=float)

    cases = []
    for b in ALL_BASES:
        cases.append((f"eval {b.name}", lambda u, b=b: eval_basis_many(b, t, xs, use_numba=u)))
    cases.append(("d/dx d/dy s3", lambda u: eval_derivatives_many("s3", t, xs, [(1.0, 0.0), (0.0, 1.0)], use_numba=u)))

    print(f"{args.points} points, best of {args.repeat}")
    print(f"{'case':<16}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, fn in cases:
        t_np = best_of(lambda: fn(False), args.repeat)
        if _kernels.HAVE_NUMBA:
            fn(True)  # compile outside the timing
            a, b = fn(True), fn(False)
            assert np.allclose(a, b, atol=1e-12)
            t_nb = best_of(lambda: fn(True), args.repeat)
            print(f"{name:<16}{1e3 * t_np:12.1f}{1e3 * t_nb:12.1f}{t_np / t_nb:10.2f}")
        else:
            print(f"{name:<16}{1e3 * t_np:12.1f}{'n/a':>12}{'':>10}")


if __name__ == "__main__":
    main()
