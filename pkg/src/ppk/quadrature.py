"""Exact integer recovery by circle quadrature, plus arc diagnostics.

The count p(n) is the n-th Taylor coefficient of exp(Phi) and equals a
discrete mean over an M-point grid on the circle of radius rho = e^{-1/X}:

    (1/M) sum_m Psi(rho e(m/M)) e(-n m/M) * rho^{-n}
        = p(n) + sum_{s >= 1} p_T(n + sM) rho^{sM},

where p_T counts with the truncated generating function.  The truncation
keeps every term with t = j p^k <= max(Lambda X, n + 1), so the n-th
coefficient is exactly p(n) and only the aliasing tail stands between the
grid mean and the integer.  M is doubled until a safety-padded estimate of
that tail drops below 1/4; the grid evaluation then runs entirely in
gmpy2 at a caller-chosen precision and the nearest integer is returned
together with the residual that certifies it.

There is no interval arithmetic here.  The tail bound leans on the
closed-form log-estimate of the count with a factor e^10 of headroom, and
the certification is empirical: the residual, stability under doubling M,
and stability under raising the precision.

The rest of the module is diagnostic: a Farey dissection of the circle
into major arcs, a profile of log|integrand| over the circle labelled by
arc, and a Gaussian closed form for the principal-arc integral.
"""

import math
from dataclasses import dataclass

import gmpy2
import numpy as np

from . import hp
from .asymptotics import main_term
from .phi import (
    DEFAULT_EPS,
    DEFAULT_TOL,
    _series_pairs,
    make_plan,
    phi_m,
    solve_saddle,
)

DEFAULT_QUAD_EPS = 1e-18
_LOG_QUARTER = math.log(0.25)


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of one integer recovery.

    Attributes:
        n, k: the target coefficient and the power.
        M: number of grid points actually used.
        count: recovered integer.
        tail_log_bound: log of the aliasing-tail estimate at the final M.
        residual: |grid mean - count|, must be < 1/4.
        precision_bits: working precision of the grid evaluation.
    """

    n: int
    k: int
    M: int
    count: int
    tail_log_bound: float
    residual: float
    precision_bits: int


def _aliasing_tail_log(n: int, k: int, M: int, X: float, tol: float) -> float:
    """Log-estimate of sum_{s>=1} p(n+sM) rho^{sM} with e^10 headroom.

    Each count is replaced by exp(main-term log + 10); the sum is dominated
    by a geometric series whose ratio comes from the s=1 -> s=2 step (the
    log-estimate is concave in n, so later steps only shrink faster).
    Returns +inf when the ratio has not dropped below 1 yet.
    """
    g1 = main_term(n + M, k, tol).log_value + 10.0
    g2 = main_term(n + 2 * M, k, tol).log_value + 10.0
    first = g1 - M / X
    ratio_log = g2 - g1 - M / X
    if ratio_log >= -1e-9:
        return math.inf
    return first - math.log1p(-math.exp(ratio_log))


def cauchy_count(
    n: int,
    k: int,
    precision_bits: int = 256,
    eps: float = DEFAULT_QUAD_EPS,
    tol: float = DEFAULT_TOL,
    extra_doublings: int = 0,
) -> QuadratureResult:
    """Recover the exact count p(n) from the circle integral.

    precision_bits >= 128 is required; 256 is comfortable for every n this
    is meant for.  extra_doublings multiplies the accepted grid size by
    2^extra_doublings and exists for the stability check that the count
    does not depend on M once the tail bound is met.

    Raises RuntimeError when the residual cannot be driven below 1/4 at
    the given precision.
    """
    n = int(n)
    k = int(k)
    if n < 4:
        raise ValueError(f"n must be >= 4, got {n}")
    if precision_bits < 128:
        raise ValueError("precision_bits must be >= 128")
    if extra_doublings < 0:
        raise ValueError("extra_doublings must be >= 0")

    sp = solve_saddle(n, k, tol, eps)
    X = sp.X
    plan = make_plan(X, k, eps)
    lam_x = max(plan.Lambda * X, float(n + 1))
    j_arr, t_arr = _series_pairs(k, lam_x)

    M = 8 * math.ceil(X)
    tail = _aliasing_tail_log(n, k, M, X, tol)
    doublings = 0
    while tail >= _LOG_QUARTER:
        M *= 2
        doublings += 1
        if doublings > 60:
            raise RuntimeError(
                f"aliasing tail will not close at n={n} k={k} (M={M})"
            )
        tail = _aliasing_tail_log(n, k, M, X, tol)
    M <<= extra_doublings

    classes = (t_arr % M).tolist()
    j_list = j_arr.tolist()
    t_list = t_arr.tolist()

    with gmpy2.context(precision=precision_bits):
        Xhp = gmpy2.mpfr(X)
        weights = [gmpy2.mpfr(0)] * M
        for jj, tt, c in zip(j_list, t_list, classes):
            weights[c] += gmpy2.exp(gmpy2.mpfr(-tt) / Xhp) / jj

        roots = hp.unit_roots(M, precision_bits)
        grid = hp.fourier_grid(weights, roots)

        # Conjugate symmetry: grid[M-m] = conj(grid[m]) because the weights
        # are real, so the mean needs only m <= M/2 with doubled real parts.
        half = M // 2
        acc = gmpy2.exp(grid[0]).real
        sign = 1 if n % 2 == 0 else -1
        acc += sign * gmpy2.exp(grid[half]).real
        for m in range(1, half):
            z = gmpy2.exp(grid[m]) * roots[(-n * m) % M]
            acc += 2 * z.real
        raw = acc / M * gmpy2.exp(gmpy2.mpfr(n) / Xhp)

        nearest = gmpy2.rint(raw)
        residual = float(abs(raw - nearest))
        count = int(nearest)

    if residual >= 0.25:
        raise RuntimeError(
            f"quadrature residual {residual:.6g} >= 1/4 at n={n} k={k} "
            f"M={M} precision_bits={precision_bits}; raise precision_bits"
        )
    return QuadratureResult(
        n=n,
        k=k,
        M=M,
        count=count,
        tail_log_bound=tail,
        residual=residual,
        precision_bits=precision_bits,
    )


def section_six_cutoffs(X: float, k: int) -> tuple[float, float]:
    """The two scale cutoffs (tau, eta) used by the arc analysis.

    tau = X^{-1} (log X)^{-1/4} separates the flat center of the principal
    arc; eta = X^{-(1 + 1/(2k))} (log X)^2 is the Gaussian window.
    """
    X = float(X)
    if not X >= 10:
        raise ValueError("X must be >= 10")
    lg = math.log(X)
    tau = lg ** -0.25 / X
    eta = X ** -(1.0 + 1.0 / (2.0 * k)) * lg**2
    return tau, eta


@dataclass(frozen=True)
class Arc:
    """One major arc: |alpha - a/q| <= half_width, center taken in [0, 1)."""

    q: int
    a: int
    center: float
    half_width: float


@dataclass(frozen=True)
class ArcPartition:
    X: float
    k: int
    A: float
    Q: float
    arcs: tuple
    total_measure: float
    overlapping: bool
    covers: bool


def arc_partition(X: float, k: int, A: float | None = None) -> ArcPartition:
    """Farey dissection: arcs of half-width (log X)^A / (q X) at a/q, q <= Q.

    Q = (log X)^A.  A defaults to 12k, which at desk scale usually makes
    Q >= X and the dissection vacuous; that case is rejected with an
    explicit error, so diagnostics want a small A (the command line uses
    A = 1).  Reports the measure of the union, whether any two arcs
    overlap, and whether the union covers the whole circle.
    """
    X = float(X)
    if not X >= 10:
        raise ValueError("X must be >= 10")
    if A is None:
        A = 12.0 * k
    A = float(A)
    if not A > 0:
        raise ValueError("A must be positive")
    Q = math.log(X) ** A
    if Q >= X:
        raise ValueError(
            f"vacuous arc partition: Q = (log X)^A = {Q:.6g} >= X = {X:.6g}; "
            "the arcs would cover the circle many times over"
        )

    arcs = [Arc(q=1, a=0, center=0.0, half_width=Q / X)]
    for q in range(2, math.floor(Q) + 1):
        hw = Q / (q * X)
        for a in range(1, q):
            if math.gcd(a, q) == 1:
                arcs.append(Arc(q=q, a=a, center=a / q, half_width=hw))

    total, overlapping, covers = _circle_union(
        [(arc.center, arc.half_width) for arc in arcs]
    )
    return ArcPartition(
        X=X,
        k=int(k),
        A=A,
        Q=Q,
        arcs=tuple(arcs),
        total_measure=total,
        overlapping=overlapping,
        covers=covers,
    )


def _circle_union(intervals) -> tuple[float, bool, bool]:
    """Measure of a union of circle intervals (center, half_width) on R/Z.

    Sweep-line over event points; also reports whether any point is covered
    twice and whether the union is everything.
    """
    events = []
    base = 0
    for c, h in intervals:
        w = 2.0 * h
        if w >= 1.0:
            return 1.0, True, True
        s = (c - h) % 1.0
        e = s + w
        events.append((s, +1))
        if e >= 1.0:
            base += 1
            events.append((e - 1.0, -1))
        else:
            events.append((e, -1))
    events.sort()
    level = base
    covered = 0.0
    overlap = False
    prev = 0.0
    for x, d in events:
        if level > 0:
            covered += x - prev
        if level > 1:
            overlap = True
        prev = x
        level += d
    if level != base:
        raise AssertionError("unbalanced sweep")
    if level > 0:
        covered += 1.0 - prev
    if level > 1:
        overlap = True
    return covered, overlap, covered >= 1.0 - 1e-12


@dataclass(frozen=True)
class ProfileRow:
    """One sample of the integrand profile.

    log_abs_integrand is Re Phi(rho e(alpha)), the log of |Psi| on the
    circle.  arc_q/arc_a name the smallest-q arc containing alpha, or are
    None on the minor arcs.
    """

    alpha: float
    log_abs_integrand: float
    arc_q: int | None
    arc_a: int | None
    region: str


@dataclass(frozen=True)
class ArcProfile:
    n: int
    k: int
    X: float
    A: float
    tau: float
    eta: float
    rows: tuple

    def csv_lines(self) -> list:
        """Rows as CSV with header alpha,log_abs_integrand,arc_q,arc_a,region."""
        out = ["alpha,log_abs_integrand,arc_q,arc_a,region"]
        for r in self.rows:
            q = "" if r.arc_q is None else str(r.arc_q)
            a = "" if r.arc_a is None else str(r.arc_a)
            out.append(
                f"{r.alpha:.17g},{r.log_abs_integrand:.17g},{q},{a},{r.region}"
            )
        return out


def arc_profile(
    n: int,
    k: int,
    samples: int = 256,
    A: float = 1.0,
    eps: float = DEFAULT_EPS,
    tol: float = DEFAULT_TOL,
) -> ArcProfile:
    """Profile of log|integrand| over alpha in [-1/2, 1/2) at the saddle of n.

    samples >= 16 equally spaced points.  Each row is labelled with the
    lowest-q arc of the (log X)^A dissection containing it: region
    "principal" for the q = 1 arc, "major" for any other arc, "minor"
    outside all of them.
    """
    n = int(n)
    samples = int(samples)
    if samples < 16:
        raise ValueError("samples must be >= 16")
    sp = solve_saddle(n, k, tol, eps)
    X = sp.X
    part = arc_partition(X, k, A)
    tau, eta = section_six_cutoffs(X, k)

    plan = make_plan(X, k, eps)
    j_arr, t_arr = _series_pairs(k, plan.Lambda * X)
    tf = t_arr.astype(np.float64)
    w = np.exp(-tf / X) / j_arr

    by_q = sorted(part.arcs, key=lambda arc: (arc.q, arc.a))
    rows = []
    for i in range(samples):
        alpha = -0.5 + i / samples
        ang = 2.0 * np.pi * np.mod(tf * alpha, 1.0)
        re_phi = float(w @ np.cos(ang))
        hit = None
        for arc in by_q:
            d = abs(alpha - arc.center) % 1.0
            if min(d, 1.0 - d) <= arc.half_width:
                hit = arc
                break
        if hit is None:
            rows.append(ProfileRow(alpha, re_phi, None, None, "minor"))
        elif hit.q == 1:
            rows.append(ProfileRow(alpha, re_phi, 1, 0, "principal"))
        else:
            rows.append(ProfileRow(alpha, re_phi, hit.q, hit.a, "major"))
    return ArcProfile(
        n=n, k=int(k), X=X, A=float(A), tau=tau, eta=eta, rows=tuple(rows)
    )


def gaussian_main_term_quadrature(
    n: int, k: int, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS
) -> float:
    """Log of the principal-arc integral in Gaussian approximation.

    Replaces the integrand on |alpha| <= eta by the quadratic expansion
    Psi(rho) e^{-2 pi^2 alpha^2 Phi_2} and integrates in closed form:

        log = main-term log + log erf(eta pi sqrt(2 Phi_2)).

    Once eta sqrt(Phi_2) is large the erf factor is 1 to many digits and
    this reproduces the saddle-point estimate itself.
    """
    n = int(n)
    if n < 10:
        raise ValueError("n must be >= 10")
    est = main_term(n, k, tol, eps)
    X = est.saddle.X
    _, eta = section_six_cutoffs(X, k)
    p2 = phi_m(X, k, 2, eps)
    arg = eta * math.pi * math.sqrt(2.0 * p2)
    # log erf via erfc to stay exact when arg is huge (erfc underflows to 0,
    # log1p(0) = 0) and honest when it is not.
    log_erf = math.log1p(-math.erfc(arg)) if arg > 0.5 else math.log(math.erf(arg))
    return est.log_value + log_erf
