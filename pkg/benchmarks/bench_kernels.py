"""Frontier expansion: numba kernel against the numpy fallback.

    python benchmarks/bench_kernels.py [--n 2 3] [--radius 12] [--repeat 5]

Times one expansion of the largest BFS layer and a full ball build with each
backend.  The full-ball timings set BS_GEODESY_NUMBA so the same code path
the library uses is measured.
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from bs_geodesy import _kernels
from bs_geodesy.cayley_oracle import bfs_ball


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def full_ball(n, radius, use_numba):
    old = os.environ.get("BS_GEODESY_NUMBA")
    os.environ["BS_GEODESY_NUMBA"] = "1" if use_numba else "0"
    try:
        return bfs_ball(n, radius)
    finally:
        if old is None:
            del os.environ["BS_GEODESY_NUMBA"]
        else:
            os.environ["BS_GEODESY_NUMBA"] = old


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--radius", type=int, default=12)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy backend can run")
    print(f"{'n':>3} {'R':>3} {'layer':>9} {'numpy ms':>10} {'numba ms':>10} {'ball numpy s':>13} {'ball numba s':>13}")
    for n in args.n:
        ball = bfs_ball(n, args.radius)
        layer = np.asarray(ball.layers[-1])
        t_np = best_of(lambda: _kernels.expand_numpy(layer, n), args.repeat)
        if _kernels.HAVE_NUMBA:
            _kernels.expand_numba(layer[:8], n)  # compile outside the timing
            t_nb = best_of(lambda: _kernels.expand_numba(layer, n), args.repeat)
            a = np.sort(_kernels.expand_numpy(layer, n))
            b = np.sort(_kernels.expand_numba(layer, n))
            assert np.array_equal(a, b), "backends disagree"
        else:
            t_nb = float("nan")
        ball_np = best_of(lambda: full_ball(n, args.radius, False), 1)
        ball_nb = best_of(lambda: full_ball(n, args.radius, True), 1) if _kernels.HAVE_NUMBA else float("nan")
        print(
            f"{n:>3} {args.radius:>3} {len(layer):>9} {1e3 * t_np:>10.2f} {1e3 * t_nb:>10.2f} "
            f"{ball_np:>13.3f} {ball_nb:>13.3f}"
        )


if __name__ == "__main__":
    main()
