"""Compare the numba and numpy row reductions over GF(p).

    python3 benchmarks/bench_rref.py --sizes 50 100 200 --repeat 5
"""
import argparse
import time

import numpy as np

from rauzy import linalg


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    ap.add_argument("--prime", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if linalg._rref_mod_p_jit is None:
        print("numba is not importable; only the numpy path is available")
    rng = np.random.default_rng(args.seed)
    print(f"{'n':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in args.sizes:
        a = rng.integers(0, args.prime, size=(n, n + n // 2), dtype=np.int64)
        ref = linalg.rref_mod_p(a.copy(), args.prime, jit=False)
        t_np = best_of(lambda: linalg.rref_mod_p(a.copy(), args.prime, jit=False), args.repeat)
        if linalg._rref_mod_p_jit is None:
            print(f"{n:>6} {t_np:>10.4f} {'-':>10} {'-':>8}")
            continue
        got = linalg.rref_mod_p(a.copy(), args.prime, jit=True)  # also warms the jit cache
        assert np.array_equal(np.asarray(ref), np.asarray(got)), "numba and numpy disagree"
        t_jit = best_of(lambda: linalg.rref_mod_p(a.copy(), args.prime, jit=True), args.repeat)
        print(f"{n:>6} {t_np:>10.4f} {t_jit:>10.4f} {t_np / t_jit:>7.1f}x")


if __name__ == "__main__":
    main()
