#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot paths -- point-pair joint densities and the finite-width
tensor-product quadrature -- over scan-sized grids on every available
backend. Also cross-checks that the backends agree numerically.

Usage: python benchmarks/bench_backends.py [--points 20001] [--repeat 5]
"""

import argparse
import time

import numpy as np

from bunching import Sinc, kernels
from bunching.detector import gauss_legendre_rule


def timeit(fn, repeat):
    fn()  # warm-up (JIT compile / cache load)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=20001)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--nodes", type=int, default=32)
    args = ap.parse_args()

    pair = (Sinc(1.0, 2.25), Sinc(1.0, -2.25))
    xs = np.linspace(-10, 10, args.points)
    xs_small = xs[:: max(1, args.points // 2001)]
    nodes, weights = gauss_legendre_rule(args.nodes)
    backends = kernels.available_backends()
    print(f"available backends: {', '.join(backends)}")
    print(f"grid: {args.points} points (finite-width on {xs_small.size}), "
          f"{args.nodes} quadrature nodes per axis, best of {args.repeat}\n")

    results = {}
    print(f"{'kernel':<14}{'backend':<9}{'time':>12}{'throughput':>18}")
    for backend in backends:
        t, out = timeit(lambda: kernels.joint_grid(*pair, xs, 0.02, backend=backend), args.repeat)
        results[("joint", backend)] = out
        print(f"{'joint_grid':<14}{backend:<9}{t * 1e3:>10.2f} ms{xs.size / t / 1e6:>13.1f} Mpt/s")
    for backend in backends:
        t, out = timeit(
            lambda: kernels.finite_grid(*pair, xs_small, 0.02, nodes, weights, backend=backend),
            args.repeat,
        )
        results[("finite", backend)] = out
        print(
            f"{'finite_grid':<14}{backend:<9}{t * 1e3:>10.2f} ms"
            f"{xs_small.size / t / 1e3:>13.1f} kpt/s"
        )

    if len(backends) == 2:
        for kind in ("joint", "finite"):
            for a, b in zip(results[(kind, backends[0])], results[(kind, backends[1])]):
                np.testing.assert_allclose(a, b, rtol=1e-12)
        print("\nbackends agree to 1e-12 relative")


if __name__ == "__main__":
    main()
