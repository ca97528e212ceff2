"""Modular RREF: numba kernel vs the pure-numpy fallback.

    python benchmarks/bench_rref.py [--sizes 100 200 400] [--repeat 3]

Each backend reduces the same random matrices over F_p; the script checks
that both return identical echelon forms and prints the best time of each.
"""

import argparse
import time

import numpy as np

from gerst import _kernels


def bench(fn, a, p, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        work = a.copy()
        t0 = time.perf_counter()
        piv = fn(work, p, a.shape[1])
        best = min(best, time.perf_counter() - t0)
        out = (work, piv)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400])
    ap.add_argument("--prime", type=int, default=2147483629)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _kernels.numba is None:
        raise SystemExit("numba is not installed")
    rng = np.random.default_rng(args.seed)
    p = args.prime
    # compile outside the timed region
    _kernels._rref_numba(rng.integers(0, p, (4, 4)).astype(np.int64), p, 4)
    print(f"{'n':>6} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for n in args.sizes:
        # rank-deficient on purpose: last quarter of rows are combinations
        a = rng.integers(0, p, (n, n), dtype=np.int64)
        k = n - n // 4
        mix = rng.integers(0, 3, (n - k, k), dtype=np.int64)
        a[k:] = (mix @ (a[:k] % 1024)) % p if p > 2**20 else (mix @ a[:k]) % p
        t_nb, (r_nb, p_nb) = bench(_kernels._rref_numba, a, p, args.repeat)
        t_np, (r_np, p_np) = bench(_kernels._rref_numpy, a, p, args.repeat)
        assert np.array_equal(r_nb, r_np) and np.array_equal(p_nb, p_np), "backends disagree"
        print(f"{n:>6} {t_nb:>10.4f} {t_np:>10.4f} {t_np / t_nb:>8.1f}")


if __name__ == "__main__":
    main()
