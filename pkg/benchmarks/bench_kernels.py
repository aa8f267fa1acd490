"""Time the jitted kernels against their pure-numpy twins.

Run from the repo root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --reps 7 --seed 1

Both backends are imported directly so the comparison works regardless
of the SRSKIT_NO_NUMBA setting in the environment.
"""

import argparse
import time

import numpy as np

from srskit._kernels import (
    NUMBA_AVAILABLE,
    lloyd_numba,
    lloyd_numpy,
    pick_distinct_argmax_numba,
    pick_distinct_argmax_numpy,
)


def best_of(fn, reps):
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_pick(rng, n, n2, reps):
    Q = rng.standard_normal((n, n2))
    cases = {"numpy": lambda: pick_distinct_argmax_numpy(Q)}
    if NUMBA_AVAILABLE:
        pick_distinct_argmax_numba(Q[:2])  # compile outside the timer
        cases["numba"] = lambda: pick_distinct_argmax_numba(Q)
    return {k: best_of(fn, reps) for k, fn in cases.items()}


def bench_lloyd(rng, n1, n2, k, iters, reps):
    P = rng.standard_normal((n2, n1))
    C0 = P[rng.permutation(n2)[:k]].copy()
    cases = {"numpy": lambda: lloyd_numpy(P, C0, iters)}
    if NUMBA_AVAILABLE:
        lloyd_numba(P[: 2 * k], C0, 2)  # compile outside the timer
        cases["numba"] = lambda: lloyd_numba(P, C0, iters)
    return {k_: best_of(fn, reps) for k_, fn in cases.items()}


def report(label, res):
    t_np = res["numpy"]
    if "numba" in res:
        speedup = t_np / res["numba"]
        print(f"{label:<38} numpy {t_np * 1e3:9.2f} ms   "
              f"numba {res['numba'] * 1e3:9.2f} ms   x{speedup:5.1f}")
    else:
        print(f"{label:<38} numpy {t_np * 1e3:9.2f} ms   numba unavailable")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=5, help="best-of repetitions")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"numba available: {NUMBA_AVAILABLE}")
    print()

    for n, n2 in ((100, 2_000), (400, 13_000), (1_000, 50_000)):
        res = bench_pick(rng, n, n2, args.reps)
        report(f"pick_distinct_argmax n={n} N2={n2}", res)
    print()
    for n1, n2, k in ((2, 5_000, 2), (10, 20_000, 20), (50, 10_000, 50)):
        res = bench_lloyd(rng, n1, n2, k, 50, args.reps)
        report(f"lloyd N1={n1} N2={n2} k={k} iters=50", res)


if __name__ == "__main__":
    main()
