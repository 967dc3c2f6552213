#!/usr/bin/env python3
"""Benchmark the JIT kernels against their pure-Python fallbacks.

Usage:
    python benchmarks/bench_kernels.py [--tree-n 200000] [--repeats 5]

Runs each kernel through both code paths on identical inputs and reports
wall time and speedup.  With TREESPEC_DISABLE_NUMBA=1 (or numba missing)
both paths are the same function and the speedup column is moot.
"""

import argparse
import time

import numpy as np

from treespec import _kernels
from treespec.oracle import random_tree
from treespec.treediag import MatrixKind, build_matrix


def timeit(fn, *args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jt_sweep(tree_n, repeats):
    tree = random_tree(tree_n, seed=1)
    m = build_matrix(tree, MatrixKind.LAPLACIAN)
    base = m._diag_f - 0.37

    def run(fn):
        return timeit(lambda: fn(base.copy(), tree.order0, tree.parent0, m._w2_f, 1e-10),
                      repeats=repeats)

    _kernels.jt_sweep(base.copy(), tree.order0, tree.parent0, m._w2_f, 1e-10)  # warm JIT
    return run(_kernels.jt_sweep), run(_kernels.jt_sweep_py)


def bench_jacobi(n, repeats):
    rng = np.random.default_rng(2)
    sym = rng.normal(size=(n, n))
    sym = sym + sym.T

    def run(fn):
        return timeit(lambda: fn(sym.copy(), 1e-10, 100), repeats=repeats)

    _kernels.jacobi_eigenvalues(sym.copy(), 1e-10, 100)  # warm JIT
    return run(_kernels.jacobi_eigenvalues), run(_kernels.jacobi_eigenvalues_py)


def bench_orbit(count, repeats):
    buf = np.empty(count)

    def run(fn):
        def once():
            buf[0] = -0.9
            fn(buf, 2.0 / 19.0, -1.0, 1e-12)
        return timeit(once, repeats=repeats)

    buf[0] = -0.9
    _kernels.orbit_fill(buf, 2.0 / 19.0, -1.0, 1e-12)  # warm JIT
    return run(_kernels.orbit_fill), run(_kernels.orbit_fill_py)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tree-n", type=int, default=200_000)
    parser.add_argument("--jacobi-n", type=int, default=64)
    parser.add_argument("--orbit-count", type=int, default=2_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"numba enabled: {_kernels.NUMBA_ENABLED} "
          f"(set {_kernels.DISABLE_ENV}=1 to force the fallback)")
    rows = [
        (f"jt_sweep (tree n={args.tree_n})", *bench_jt_sweep(args.tree_n, args.repeats)),
        (f"jacobi_eigenvalues (n={args.jacobi_n})", *bench_jacobi(args.jacobi_n, args.repeats)),
        (f"orbit_fill (count={args.orbit_count})", *bench_orbit(args.orbit_count, args.repeats)),
    ]
    print(f"{'kernel':<38} {'jit [s]':>12} {'python [s]':>12} {'speedup':>9}")
    for name, jit_t, py_t in rows:
        print(f"{name:<38} {jit_t:>12.6f} {py_t:>12.6f} {py_t / jit_t:>8.1f}x")


if __name__ == "__main__":
    main()
