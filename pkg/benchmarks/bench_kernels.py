"""Time the compiled kernels against the pure-Python fallbacks.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

Both implementations are imported side by side, so the PPK_PURE switch is
not needed here; that variable selects the implementation for a whole
process.  Workloads mirror the real call sites: the partition DP over
prime parts, the truncated exponential series behind Phi, and the residue
class sums behind the high-precision grid.
"""

import argparse
import time

import numpy as np

from ppk import _purekernels
from ppk.counting import PartsSpec, generate_parts
from ppk.nt import sieve_primes
from ppk.phi import _series_terms, make_plan

try:
    from ppk import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(dp_n, dp_k, series_x, q):
    parts = np.asarray(generate_parts(PartsSpec.prime_powers(dp_k), dp_n), dtype=np.int64)

    def make_dp(impl):
        def run():
            counts = [1] + [0] * dp_n
            impl.dp_accumulate(counts, parts)

        return run

    plan = make_plan(series_x, 2)
    t, c = _series_terms(2, plan.Lambda * series_x, 0)
    _, c2 = _series_terms(2, plan.Lambda * series_x, 1)
    inv_x = 1.0 / series_x

    primes = sieve_primes(10**6).primes
    residues = (primes.astype(np.int64) ** 2) % q
    ang = 2.0 * np.pi * np.arange(q) / q
    cos_tab, sin_tab = np.cos(ang), np.sin(ang)

    return [
        (f"dp_accumulate  parts<=({dp_k}) n={dp_n}", make_dp),
        (
            f"exp_dot        {t.size} terms",
            lambda impl: lambda: impl.exp_dot(t, c, inv_x),
        ),
        (
            f"exp_dot2       {t.size} terms",
            lambda impl: lambda: impl.exp_dot2(t, c, c2, inv_x),
        ),
        (
            f"expsum_dot     {residues.size} primes, q={q}",
            lambda impl: lambda: impl.expsum_dot(residues, 7, q, cos_tab, sin_tab),
        ),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--dp-n", type=int, default=30000)
    ap.add_argument("--dp-k", type=int, default=1)
    ap.add_argument("--series-x", type=float, default=1e4)
    ap.add_argument("--q", type=int, default=4093)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled extension not built; timing the fallback only")
    header = f"{'kernel / workload':<42}{'ext (ms)':>10}{'pure (ms)':>11}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, make in workloads(args.dp_n, args.dp_k, args.series_x, args.q):
        t_pure = best_of(make(_purekernels), args.repeats)
        if _kernels is not None:
            t_ext = best_of(make(_kernels), args.repeats)
            print(
                f"{label:<42}{t_ext * 1e3:>10.2f}{t_pure * 1e3:>11.2f}"
                f"{t_pure / t_ext:>8.1f}x"
            )
        else:
            print(f"{label:<42}{'-':>10}{t_pure * 1e3:>11.2f}{'-':>9}")


if __name__ == "__main__":
    main()
