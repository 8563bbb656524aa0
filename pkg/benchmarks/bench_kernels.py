"""Compare the numba and numpy box-search kernels.

Usage: python3 benchmarks/bench_kernels.py [--radius R] [--repeat N]
"""

import argparse
import time

import numpy as np

from og10 import _kernels
from og10.lattice import og10_lattice

IDX = [0, 1, 2, 3, 4, 5, 22, 23]


def sub_gram():
    g = og10_lattice().gram
    return [[g[i][j] for j in IDX] for i in IDX]


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--radius", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    g = sub_gram()
    n_points = _kernels.box_size(len(g), args.radius)
    print(f"box over U^3 + A2(-1), radius {args.radius}: {n_points} points")
    cases = {
        "norm_search(q=-6)": lambda nb: _kernels.norm_search(g, args.radius, -6, use_numba=nb),
        "box_invariants": lambda nb: _kernels.box_invariants(g, args.radius, use_numba=nb),
    }
    for name, fn in cases.items():
        t_np, r_np = timed(lambda: fn(False), args.repeat)
        line = f"{name:20s} numpy {t_np * 1e3:9.1f} ms"
        if _kernels.HAVE_NUMBA:
            fn(True)  # compile outside the timing
            t_nb, r_nb = timed(lambda: fn(True), args.repeat)
            same = all(np.array_equal(a, b) for a, b in zip(
                r_np if isinstance(r_np, tuple) else (r_np,),
                r_nb if isinstance(r_nb, tuple) else (r_nb,)))
            line += f"  numba {t_nb * 1e3:9.1f} ms  speedup {t_np / t_nb:6.1f}x  agree={same}"
        else:
            line += "  numba unavailable"
        print(line)


if __name__ == "__main__":
    main()
