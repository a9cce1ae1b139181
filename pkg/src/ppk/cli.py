"""Command-line front end.

Thin subcommand layer over the library: exact count tables, saddle
parameters, closed-form estimates, exact-vs-estimate comparison tables,
exponential-sum verification sweeps, circle-quadrature integer recovery,
and arc diagnostics.

Output contract: floats are printed with 17 significant digits, rows end
with a bare newline, tables are CSV with a header row, single results are
JSON objects.  Everything is deterministic for fixed inputs; grid
commands evaluate points through a thread pool sized by PPK_THREADS
(default 1) and buffer rows back into grid order, so the bytes do not
depend on the thread count.

Exit codes: 0 success, 1 verification failure (a sweep found a
counterexample, a quadrature residual would not close), 2 configuration
error (bad arguments, infeasible sizes, cache mismatch, vacuous arc
partition).
"""

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import asymptotics, counting, expsums, quadrature
from .phi import DEFAULT_EPS, DEFAULT_TOL, solve_saddle


def _g17(x: float) -> str:
    return f"{float(x):.17g}"


def _json_object(pairs) -> str:
    """Tiny fixed-order JSON writer honouring the 17-digit float rule."""
    rows = []
    for key, val in pairs:
        if isinstance(val, bool):
            tok = "true" if val else "false"
        elif isinstance(val, int):
            tok = str(val)
        elif isinstance(val, float):
            tok = _g17(val)
        else:
            tok = '"' + str(val) + '"'
        rows.append(f'  "{key}": {tok}')
    return "{\n" + ",\n".join(rows) + "\n}"


def _emit(lines, out_path) -> None:
    text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(message: str, code: int) -> int:
    print(f"ppk: {message}", file=sys.stderr)
    return code


def _parse_grid(text: str) -> list:
    try:
        grid = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"bad n-grid {text!r}: comma-separated integers expected")
    if not grid:
        raise ValueError("n-grid must be nonempty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("n-grid must be strictly increasing")
    return grid


def _ordered_map(fn, items) -> list:
    """Map preserving item order; PPK_THREADS > 1 opts into a thread pool."""
    try:
        workers = int(os.environ.get("PPK_THREADS", "1"))
    except ValueError:
        workers = 1
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _feasibility_cap(spec: counting.PartsSpec) -> int:
    """Largest table index the CLI will agree to build."""
    if spec.kind in ("primes",) or (spec.kind == "prime_powers" and spec.k == 1):
        return 200_000
    return 1_000_000


def _check_feasible(spec: counting.PartsSpec, N: int) -> None:
    cap = _feasibility_cap(spec)
    if N > cap:
        n_parts = max(1, len(counting.generate_parts(spec, N)))
        raise ValueError(
            f"N = {N} exceeds the feasibility cap {cap} for spec "
            f"{spec.canonical()}: the table would need roughly "
            f"{float(n_parts) * N:.2g} big-integer additions"
        )


def _load_table(spec: counting.PartsSpec, N: int, cache_path) -> counting.CountTable:
    """Count table of size N, via the cache file when one is given.

    A cache whose spec differs from the request is a hard error.  A cache
    at least as long as the request is reused by prefix; a shorter one is
    recomputed and rewritten with a notice.
    """
    _check_feasible(spec, N)
    if cache_path and os.path.exists(cache_path):
        cached = counting.read_count_cache(cache_path)
        if cached.spec.canonical() != spec.canonical():
            raise ValueError(
                f"cache {cache_path} holds spec {cached.spec.canonical()}, "
                f"request is {spec.canonical()}; refusing to mix"
            )
        if cached.N >= N:
            return counting.CountTable(spec, N, cached.counts[: N + 1])
        print(
            f"ppk: cache {cache_path} covers N = {cached.N} < {N}; recomputing",
            file=sys.stderr,
        )
    table = counting.count_table(spec, N)
    if cache_path:
        counting.write_count_cache(cache_path, table)
    return table


def cmd_count(args) -> int:
    spec = counting.PartsSpec.from_string(args.spec)
    if args.n < 0:
        raise ValueError("--n must be nonnegative")
    table = _load_table(spec, args.n, args.cache)
    lines = ["n,count"]
    lines.extend(f"{n},{c}" for n, c in enumerate(table.counts))
    _emit(lines, args.out)
    return 0


def cmd_saddle(args) -> int:
    sp = solve_saddle(args.n, args.k, args.tol, args.eps)
    _emit(
        [
            _json_object(
                [
                    ("n", int(sp.n)),
                    ("k", args.k),
                    ("X", sp.X),
                    ("rho", sp.rho),
                    ("residual", sp.residual),
                ]
            )
        ],
        args.out,
    )
    return 0


def cmd_asym(args) -> int:
    grid = _parse_grid(args.n_grid)

    def row(n):
        est = asymptotics.main_term(n, args.k, args.tol, args.eps)
        simple = asymptotics.simplified_estimate(n, args.k)
        diff = asymptotics.difference_main_term(n, args.k, args.tol, args.eps)
        return (
            f"{n},{_g17(est.saddle.X)},{_g17(est.log_value)},"
            f"{_g17(simple)},{_g17(diff)}"
        )

    lines = ["n,X,main_term_log,simplified_log,diff_term_log"]
    lines.extend(_ordered_map(row, grid))
    _emit(lines, args.out)
    return 0


def cmd_compare(args) -> int:
    grid = _parse_grid(args.n_grid)
    if grid[0] < 2:
        raise ValueError("compare grid points must be >= 2")
    spec = counting.PartsSpec.prime_powers(args.k)
    table = _load_table(spec, grid[-1] + 1, args.cache)

    def row(n):
        exact = table.counts[n]
        exact_log = math.log(exact) if exact > 0 else float("-inf")
        est = asymptotics.main_term(n, args.k, args.tol, args.eps)
        ratio = math.exp(exact_log - est.log_value)
        diff = table.counts[n + 1] - table.counts[n]
        diff_log = math.log(diff) if diff > 0 else float("-inf")
        diff_est = asymptotics.difference_main_term(n, args.k, args.tol, args.eps)
        diff_ratio = math.exp(diff_log - diff_est)
        lnr = exact_log - est.log_value
        line = (
            f"{n},{_g17(exact_log)},{_g17(est.log_value)},{_g17(ratio)},"
            f"{diff},{_g17(diff_est)},{_g17(diff_ratio)}"
        )
        return line, abs(lnr)

    lines = ["n,exact_log,main_term_log,ratio,diff_exact,diff_term_log,diff_ratio"]
    results = _ordered_map(row, grid)
    lines.extend(line for line, _ in results)
    if len(results) > 1:
        devs = [d for _, d in results]
        mono = all(b < a for a, b in zip(devs, devs[1:]))
        word = "decreases monotonically" if mono else "does not decrease monotonically"
        lines.append(
            f"# trend: |ln ratio| {word} over grid; "
            f"first={_g17(devs[0])}, last={_g17(devs[-1])}"
        )
    _emit(lines, args.out)
    return 0


def cmd_expsum(args) -> int:
    if args.q_max < 0 or args.q_max > 10_000:
        raise ValueError("--q-max must lie in [0, 10000]")
    k, q_max = args.k, args.q_max
    reports = [
        expsums.sweep_moebius(k, q_max=q_max),
        expsums.sweep_multiplicativity(k, limit=min(60, q_max)),
        expsums.sweep_vanishing(k, cap=q_max),
    ]
    if k >= 2:
        reports.append(
            expsums.sweep_uniform(k, q_max=q_max, full_a_below=min(500, q_max))
        )
    lines = []
    failed = 0
    for rep in reports:
        failed += rep.failures
        lines.append(
            f"{rep.kind}: checked={rep.checked} failures={rep.failures} "
            f"worst_ratio={_g17(rep.worst_ratio)} worst_case={rep.worst_case}"
        )
    verdict = "PASS" if failed == 0 else "FAIL"
    lines.append(f"{verdict} k={k} q_max={q_max} total_failures={failed}")
    _emit(lines, args.out)
    return 0 if failed == 0 else 1


def cmd_quad(args) -> int:
    res = quadrature.cauchy_count(
        args.n, args.k, args.precision_bits, args.eps, args.tol
    )
    _emit(
        [
            _json_object(
                [
                    ("n", res.n),
                    ("k", res.k),
                    ("M", res.M),
                    ("count", res.count),
                    ("tail_log_bound", res.tail_log_bound),
                    ("residual", res.residual),
                    ("precision_bits", res.precision_bits),
                ]
            )
        ],
        args.out,
    )
    return 0


def cmd_arcs(args) -> int:
    prof = quadrature.arc_profile(
        args.n, args.k, samples=args.samples, A=args.arc_exponent
    )
    part = quadrature.arc_partition(prof.X, args.k, args.arc_exponent)
    print(
        f"# arcs n={args.n} k={args.k} X={_g17(prof.X)} A={_g17(part.A)} "
        f"Q={_g17(part.Q)} arcs={len(part.arcs)} "
        f"total_measure={_g17(part.total_measure)} "
        f"overlapping={str(part.overlapping).lower()} "
        f"covers={str(part.covers).lower()} "
        f"tau={_g17(prof.tau)} eta={_g17(prof.eta)}"
    )
    _emit(prof.csv_lines(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppk",
        description="Partitions into prime powers: exact counts, estimates, "
        "exponential sums, and circle-method diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, k=True, tol_eps=True, out=True):
        if k:
            p.add_argument("--k", type=int, required=True, help="power in p^k")
        if tol_eps:
            p.add_argument("--tol", type=float, default=DEFAULT_TOL)
            p.add_argument("--eps", type=float, default=DEFAULT_EPS)
        if out:
            p.add_argument("--out", default=None, help="write to file, not stdout")

    p = sub.add_parser("count", help="exact count table as CSV")
    p.add_argument("--spec", required=True, help='e.g. "prime_powers(2)"')
    p.add_argument("--n", type=int, required=True, help="largest table index")
    p.add_argument("--cache", default=None, help="count cache file to reuse/write")
    common(p, k=False, tol_eps=False)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("saddle", help="saddle parameter X for a target n")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_saddle)

    p = sub.add_parser("asym", help="closed-form estimates over an n-grid")
    p.add_argument("--n-grid", required=True, help="comma list, increasing")
    common(p)
    p.set_defaults(func=cmd_asym)

    p = sub.add_parser("compare", help="exact counts vs estimates over an n-grid")
    p.add_argument("--n-grid", required=True, help="comma list, increasing")
    p.add_argument("--cache", default=None, help="count cache file to reuse/write")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("expsum", help="run the exponential-sum verification sweeps")
    p.add_argument("--q-max", type=int, required=True, help="modulus ceiling, <= 1e4")
    common(p, tol_eps=False)
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("quad", help="exact count by circle quadrature, JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--precision-bits", type=int, default=256)
    common(p)
    p.set_defaults(func=cmd_quad)

    p = sub.add_parser("arcs", help="arc partition summary and integrand profile")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument(
        "--arc-exponent",
        type=float,
        default=1.0,
        help="exponent A in Q = (log X)^A (the source value 12k is vacuous "
        "at these scales and is rejected)",
    )
    common(p, tol_eps=False)
    p.set_defaults(func=cmd_arcs)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        return _fail(str(exc), 2)
    except (RuntimeError, AssertionError) as exc:
        return _fail(str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
