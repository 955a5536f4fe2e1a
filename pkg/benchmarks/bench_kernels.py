"""Compare the numba kernels with the numpy fallback on point-enumeration workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

The numpy path is what runs under CLOSUREKIT_DISABLE_JIT=1.
"""

import argparse
import random
import time

import numpy as np

from closurekit import _kernels, ring_from_text
from closurekit.harness import random_poly
from closurekit.points import FiniteField, evaluate, matrix_values


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def bench_eval(p, deg, nvars, repeat):
    R = ring_from_text(f"F({p})[" + ",".join(f"x{i}" for i in range(nvars)) + "]")
    F = FiniteField(p, deg)
    pts = F.points(nvars)
    f = random_poly(R, random.Random(0), max_deg=6, max_terms=12)
    evaluate(f, pts[:4], F, jit=True)  # compile outside the timing
    t_jit, a = best_of(lambda: evaluate(f, pts, F, jit=True), repeat)
    t_np, b = best_of(lambda: evaluate(f, pts, F, jit=False), repeat)
    assert np.array_equal(a, b)
    return f"eval   F_{F.q:<4} n={nvars} points={len(pts):>6}", t_jit, t_np


def bench_rank(p, deg, nvars, shape, repeat):
    R = ring_from_text(f"F({p})[" + ",".join(f"x{i}" for i in range(nvars)) + "]")
    F = FiniteField(p, deg)
    pts = F.points(nvars)
    rng = random.Random(1)
    A = [[random_poly(R, rng, max_deg=2, max_terms=3) for _ in range(shape[1])] for _ in range(shape[0])]
    mats = matrix_values(A, shape, pts, F)
    add, mul, neg, inv = F.tables
    _kernels.rank_batch(mats[:2], add, mul, neg, inv, jit=True)
    t_jit, a = best_of(lambda: _kernels.rank_batch(mats, add, mul, neg, inv, jit=True), repeat)
    t_np, b = best_of(lambda: _kernels.rank_batch(mats, add, mul, neg, inv, jit=False), repeat)
    assert np.array_equal(a, b)
    return f"rank   F_{F.q:<4} {shape[0]}x{shape[1]} batch={len(pts):>6}", t_jit, t_np


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels.numba is None:
        print("numba is not installed; only the numpy path is available")
        return
    rows = [
        bench_eval(3, 2, 3, args.repeat),
        bench_eval(7, 2, 3, args.repeat),
        bench_eval(5, 1, 5, args.repeat),
        bench_rank(3, 2, 3, (3, 4), args.repeat),
        bench_rank(7, 2, 3, (4, 4), args.repeat),
    ]
    print(f"{'workload':<38} {'numba s':>9} {'numpy s':>9} {'speedup':>8}")
    for name, tj, tn in rows:
        print(f"{name:<38} {tj:9.4f} {tn:9.4f} {tn / tj:8.1f}x")


if __name__ == "__main__":
    main()
