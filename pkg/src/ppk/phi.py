"""The series Phi and its Euler-derivative family, plus the saddle solver.

Phi is the log of the generating product at radius rho = e^(-1/X):

    Phi(X) = sum_{p prime} sum_{j >= 1} exp(-j p^k / X) / j

Applying the operator (rho d/drho) m times replaces 1/j by j^(m-1) p^(km),
i.e. the weight of the pair (j, p) becomes t^m / j with t = j p^k.  All
arithmetic is parameterized by X rather than rho, so exponents are formed
directly as -t/X and the near-cancellation in 1 - rho never enters.

Truncation keeps exactly the pairs with t <= Lambda * X, where
Lambda = ln(1/eps) + 2 ln X + 10 (enlarged by m ln(Lambda X) for the m-th
derivative to absorb the polynomial weight).  The +2 ln X + 10 margin is an
engineering choice certified by the Lambda-doubling test, not a proved
constant.
"""

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
from scipy.special import zeta

from . import kernels, nt

DEFAULT_EPS = 1e-12
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class TruncationPlan:
    """Which index pairs (j, p) a series evaluation will keep.

    Attributes:
        k: the power in p^k.
        X: evaluation point, >= 2.
        eps: relative tolerance the plan is built for.
        Lambda: pairs with j p^k <= Lambda * X are kept (base value for m=0).
        J: largest j retained (reached at p = 2).
        prime_limit: largest prime retained (reached at j = 1).
    """

    k: int
    X: float
    eps: float
    Lambda: float
    J: int
    prime_limit: int


def make_plan(
    X: float, k: int, eps: float = DEFAULT_EPS, lambda_factor: float = 1.0
) -> TruncationPlan:
    """Build a truncation plan for (X, k) at relative tolerance eps.

    lambda_factor scales Lambda and exists for the certification test that
    compares an evaluation against one with Lambda doubled.
    """
    X = float(X)
    if not X >= 2:
        raise ValueError(f"X must be >= 2, got {X:g}")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps:g}")
    if k < 1:
        raise ValueError("k must be a positive integer")
    lam = (math.log(1.0 / eps) + 2.0 * math.log(X) + 10.0) * lambda_factor
    lam_x = lam * X
    return TruncationPlan(
        k=int(k),
        X=X,
        eps=eps,
        Lambda=lam,
        J=min(math.ceil(lam_x / 2**k), int(lam_x)),
        prime_limit=math.ceil(lam_x ** (1.0 / k)),
    )


def _series_pairs(k: int, lam_x: float) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays (j, t) with t = j p^k <= lam_x, ordered by (p, j)."""
    T = int(lam_x)
    if T < 2**k:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    pk = nt.sieve_primes(nt.introot(T, k)).primes ** k
    jmax = T // pk
    ends = np.cumsum(jmax)
    j = np.arange(1, int(ends[-1]) + 1, dtype=np.int64) - np.repeat(ends - jmax, jmax)
    t = j * np.repeat(pk, jmax)
    return j, t


def _series_terms(k: int, lam_x: float, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Float arrays (t, c) with weight c = t^m / j for the m-th derivative."""
    j, t = _series_pairs(k, lam_x)
    tf = t.astype(np.float64)
    return tf, tf**m / j


def _lambda_m(plan: TruncationPlan, m: int) -> float:
    if m == 0:
        return plan.Lambda
    return plan.Lambda + m * math.log(plan.Lambda * plan.X)


def phi_with_plan(plan: TruncationPlan, m: int = 0) -> float:
    """Evaluate the m-th Euler derivative of Phi under an explicit plan."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    t, c = _series_terms(plan.k, _lambda_m(plan, m) * plan.X, m)
    if t.size == 0:
        return 0.0
    return kernels.exp_dot(t, c, 1.0 / plan.X)


def phi(X: float, k: int, eps: float = DEFAULT_EPS) -> float:
    """Phi at rho = e^(-1/X); strictly positive and increasing in X."""
    return phi_with_plan(make_plan(X, k, eps), 0)


def phi_m(X: float, k: int, m: int, eps: float = DEFAULT_EPS) -> float:
    """m-th Euler derivative (rho d/drho)^m Phi at rho = e^(-1/X)."""
    return phi_with_plan(make_plan(X, k, eps), m)


def phi_complex(
    X: float,
    k: int,
    alpha,
    eps: float = DEFAULT_EPS,
    precision_bits: int = 53,
):
    """Phi on the circle of radius rho: sum of exp(-t/X) e(t alpha) / j.

    alpha is reduced mod 1.  At precision_bits = 53 the sum is evaluated in
    double precision (numpy) and returned as a builtin complex.  For larger
    precision_bits the evaluation runs term by term in gmpy2 and returns an
    mpc; passing alpha as a Fraction (or int) keeps the angle arithmetic
    exact, which the quadrature cross-checks rely on.
    """
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    plan = make_plan(X, k, eps)
    if precision_bits > 53:
        return _phi_complex_hp(plan, alpha, precision_bits)
    alpha_f = float(alpha)
    alpha_f -= math.floor(alpha_f + 0.5)
    j, t = _series_pairs(k, plan.Lambda * plan.X)
    if t.size == 0:
        return complex(0.0, 0.0)
    tf = t.astype(np.float64)
    w = np.exp(-tf / plan.X) / j
    ang = 2.0 * np.pi * ((tf * alpha_f) % 1.0)
    return complex(float(w @ np.cos(ang)), float(w @ np.sin(ang)))


def _phi_complex_hp(plan: TruncationPlan, alpha, bits: int):
    j_arr, t_arr = _series_pairs(plan.k, plan.Lambda * plan.X)
    with gmpy2.context(precision=bits):
        two_pi = 2 * gmpy2.const_pi()
        X = gmpy2.mpfr(plan.X)
        if isinstance(alpha, (Fraction, int)):
            frac = Fraction(alpha)
            alpha_x = gmpy2.mpq(frac.numerator, frac.denominator)
        else:
            alpha_x = gmpy2.mpfr(alpha)
            alpha_x -= gmpy2.floor(alpha_x + gmpy2.mpfr(0.5))
        re = gmpy2.mpfr(0)
        im = gmpy2.mpfr(0)
        for jj, tt in zip(j_arr.tolist(), t_arr.tolist()):
            prod = tt * alpha_x
            ang = two_pi * gmpy2.mpfr(prod - int(prod))
            mag = gmpy2.exp(-tt / X) / jj
            re += mag * gmpy2.cos(ang)
            im += mag * gmpy2.sin(ang)
        return gmpy2.mpc(re, im)


@dataclass(frozen=True)
class SaddlePoint:
    """Solution of the saddle equation Phi_1(rho(X)) = n.

    Attributes:
        n: the target.
        X: solved parameter with rho = exp(-1/X).
        rho: the radius itself.
        residual: |Phi_1 - n| at the returned X.
    """

    n: float
    X: float
    rho: float
    residual: float


def solve_saddle(
    n: float, k: int, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS
) -> SaddlePoint:
    """Solve Phi_1(X) = n for X by safeguarded Newton iteration.

    The initial guess inverts the closed-form growth of Phi_1; the bracket
    [X0/8, 8 X0] is validated by sign change and widened geometrically if
    needed (strict monotonicity of Phi_1 in X makes this terminate).  Newton
    steps use dPhi_1/dX = Phi_2 / X^2 and fall back to bisection whenever a
    step leaves the bracket.

    Below n = 10 the asymptotic regime is meaningless; the equation is still
    solved but a warning is emitted.
    """
    n = float(n)
    if n <= 0:
        raise ValueError("n must be positive")
    if k < 1:
        raise ValueError("k must be a positive integer")
    if n < 10:
        warnings.warn(
            f"saddle point at n = {n:g} is below the asymptotic regime (n >= 10)",
            stacklevel=2,
        )
    kk = k / (k + 1.0)
    zg = float(zeta(1.0 + 1.0 / k)) * math.gamma(1.0 + 1.0 / k)
    X0 = (kk * n * max(math.log(n), 1.0) / zg) ** kk
    lo = max(2.0, X0 / 8.0)
    hi = max(8.0 * X0, 2.0 * lo)

    arrays: dict = {}

    def build(top: float) -> None:
        plan = make_plan(top, k, eps)
        j, t = _series_pairs(k, _lambda_m(plan, 2) * top)
        tf = t.astype(np.float64)
        arrays["t"] = tf
        arrays["c1"] = tf / j
        arrays["c2"] = tf * tf / j

    def f12(X: float) -> tuple[float, float]:
        return kernels.exp_dot2(arrays["t"], arrays["c1"], arrays["c2"], 1.0 / X)

    build(hi)
    for _ in range(200):
        if f12(hi)[0] > n:
            break
        lo, hi = hi, 2.0 * hi
        build(hi)
    else:
        raise RuntimeError(f"could not bracket the saddle from above; hi = {hi:g}")
    for _ in range(200):
        p1_lo = f12(lo)[0]
        if p1_lo < n:
            break
        if lo <= 2.0:
            raise ValueError(
                f"no saddle with X >= 2: Phi_1(2) = {p1_lo:.6g} exceeds n = {n:g}"
            )
        hi = min(hi, lo)
        lo = max(2.0, lo / 2.0)
    else:
        raise RuntimeError(f"could not bracket the saddle from below; lo = {lo:g}")

    X = min(max(X0, lo), hi)
    for _ in range(200):
        p1, p2 = f12(X)
        r = p1 - n
        if abs(r) <= tol * n:
            return SaddlePoint(n=n, X=X, rho=math.exp(-1.0 / X), residual=abs(r))
        if r > 0:
            hi = X
        else:
            lo = X
        X_next = X - r * X * X / p2
        if not lo < X_next < hi:
            X_next = 0.5 * (lo + hi)
        X = X_next
    raise RuntimeError(
        f"saddle iteration did not converge in 200 steps; bracket "
        f"[{lo:.17g}, {hi:.17g}], residual {r:.3g}"
    )
