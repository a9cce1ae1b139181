"""Closed-form estimates built on the saddle point.

Covers the main term rho^(-n) Psi(rho) / sqrt(2 pi Phi_2), its fully
simplified form with explicit constants C1/C2, the growth closed forms for
x log(1/rho), Phi(rho), Phi_(m)(rho) and X(x), the forward-difference
estimate and its ratio constant, the major-arc approximation of Phi by
coprime power sums, and the strict real-part deficit away from the
principal arc together with the (astronomically conservative) constants
C_k and delta_k that govern it.
"""

import math
from dataclasses import dataclass
from math import gcd

import gmpy2
import numpy as np
from scipy.special import zeta

from . import expsums, nt
from .phi import (
    DEFAULT_EPS,
    DEFAULT_TOL,
    SaddlePoint,
    _series_pairs,
    make_plan,
    phi,
    phi_complex,
    phi_m,
    solve_saddle,
)


@dataclass(frozen=True)
class AsymptoticEstimate:
    """Log-space main-term estimate with its labeled components.

    log_value = n_over_X + phi_rho - half_log_2pi_phi2, all evaluated at the
    solved saddle; n_over_X equals n log(1/rho).
    """

    log_value: float
    n_over_X: float
    phi_rho: float
    half_log_2pi_phi2: float
    saddle: SaddlePoint


def main_term(
    n: float, k: int, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS
) -> AsymptoticEstimate:
    """Saddle-point main term for the count at n, in log space."""
    sp = solve_saddle(n, k, tol, eps)
    ph = phi(sp.X, k, eps)
    p2 = phi_m(sp.X, k, 2, eps)
    n_over_x = sp.n / sp.X
    half = 0.5 * math.log(2.0 * math.pi * p2)
    return AsymptoticEstimate(
        log_value=n_over_x + ph - half,
        n_over_X=n_over_x,
        phi_rho=ph,
        half_log_2pi_phi2=half,
        saddle=sp,
    )


def simplified_constants(k: int) -> tuple[float, float]:
    """The prefactor and exponent constants (C1, C2) of the simplified form."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    zg = float(zeta(1.0 + 1.0 / k)) * math.gamma(2.0 + 1.0 / k)
    c2 = (k + 1.0) * zg ** (k / (k + 1.0))
    c1 = math.sqrt(2.0 * math.pi) * math.sqrt(1.0 + 1.0 / k) * zg ** (-k / (2.0 * k + 2.0))
    return c1, c2


def simplified_estimate(n: float, k: int) -> float:
    """Log of the simplified closed form, with the o(1) in the exponent set to 0.

    Only the full main_term carries accuracy claims; the exponent's o(1) error
    here can dwarf the power-of-n prefactors at any finite n.
    """
    n = float(n)
    if n < 3:
        raise ValueError("n must be >= 3")
    c1, c2 = simplified_constants(k)
    ln_n = math.log(n)
    return (
        math.log(c1)
        - (2.0 * k + 1.0) / (2.0 * k + 2.0) * ln_n
        - k / (2.0 * k + 2.0) * math.log(ln_n)
        + c2 * n ** (1.0 / (k + 1.0)) / ln_n ** (k / (k + 1.0))
    )


@dataclass(frozen=True)
class GrowthEstimates:
    """Closed-form growth values at a point x, with printed corrections only.

    x_log_inv_rho and phi_of_rho carry the factor (1 - k/(k+1) lnln x/ln x),
    X_of_x carries (1 + k/(k+1) lnln x/ln x), and phi_m_values carry no
    correction (their printed error term has no explicit constant); all
    unprinted O(1/log x) terms are evaluated as 0.
    """

    x: float
    k: int
    x_log_inv_rho: float
    phi_of_rho: float
    phi_m_values: dict[int, float]
    X_of_x: float


def growth_estimates(x: float, k: int, m_max: int = 2) -> GrowthEstimates:
    """Evaluate the growth closed forms at x (requires x >= 100)."""
    x = float(x)
    if x < 100:
        raise ValueError("x must be >= 100")
    if k < 1:
        raise ValueError("k must be a positive integer")
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    ln_x = math.log(x)
    lnln_x = math.log(ln_x)
    kk = k / (k + 1.0)
    corr = kk * lnln_x / ln_x
    zg1 = float(zeta(1.0 + 1.0 / k)) * math.gamma(1.0 + 1.0 / k)
    bracket = ((k + 1.0) / k * zg1 * x ** (1.0 / k) / ln_x) ** kk
    g1 = math.gamma(1.0 + 1.0 / k)
    phi_ms = {
        m: (
            x ** ((m * k + 1.0) / (k + 1.0))
            * (ln_x / ((k + 1.0) / k * zg1)) ** (k * (m - 1.0) / (k + 1.0))
            * math.gamma(m + 1.0 / k)
            / g1
        )
        for m in range(1, m_max + 1)
    }
    return GrowthEstimates(
        x=x,
        k=k,
        x_log_inv_rho=bracket * (1.0 - corr),
        phi_of_rho=k * bracket * (1.0 - corr),
        phi_m_values=phi_ms,
        X_of_x=(kk * x * ln_x / zg1) ** kk * (1.0 + corr),
    )


def difference_main_term(
    n: float, k: int, tol: float = DEFAULT_TOL, eps: float = DEFAULT_EPS
) -> float:
    """Log-space estimate of the forward difference at n.

    Equals the main term times log(1/rho) = 1/X, i.e. main_term minus ln X.
    """
    mt = main_term(n, k, tol, eps)
    return mt.log_value - math.log(mt.saddle.X)


def corollary_ratio_constant(k: int) -> float:
    """Limit of (difference / count) * (n ln n)^(k/(k+1))."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    base = (1.0 + 1.0 / k) * float(zeta(1.0 + 1.0 / k)) * math.gamma(1.0 + 1.0 / k)
    return base ** (k / (k + 1.0))


@dataclass(frozen=True)
class ExceptionalConstants:
    """The uniform power-sum bound constant C_k and real-part deficit delta_k.

    For k >= 3, C_k = k^pi(k^6) is astronomically large; it is returned as an
    exact big integer while k^6 stays within the sieve cap, and flagged as
    capped beyond that.  delta_k = pi^2 / (2^(2k+3) C_k^(2k)) underflows
    double precision for every k >= 3, so it is None there and ln_delta_k
    carries the value.
    """

    k: int
    C_k: int | None
    ln_C_k: float | None
    delta_k: float | None
    ln_delta_k: float | None
    capped: bool


def exceptional_constants(k: int) -> ExceptionalConstants:
    if k < 2:
        raise ValueError("k must be >= 2")
    c, ln_c = expsums.uniform_constant(k)
    if c is None:
        return ExceptionalConstants(k, None, None, None, None, True)
    ln_delta = math.log(math.pi**2) - (2 * k + 3) * math.log(2.0) - 2 * k * ln_c
    delta = math.exp(ln_delta) if ln_delta > -700.0 else None
    return ExceptionalConstants(k, c, ln_c, delta, ln_delta, False)


def major_arc_approx(
    X: float, k: int, q: int, a: int, beta: float, precision_bits: int = 53
):
    """Approximate Phi(rho e(a/q + beta)) by the truncated coprime-sum formula.

    Evaluates X^(1/k) Gamma(1/k) / ((1 - 2 pi i beta X)^(1/k) log X) times
    sum_{j <= sqrt(X)} S_k*(q_j, a_j) / (j^(1+1/k) phi(q_j)) with
    q_j = q/(q,j), a_j = a j/(q,j), using the principal branch of the
    complex power (its argument stays in (-pi/2, pi/2) since Re = 1 > 0).
    """
    X = float(X)
    if X < 10:
        raise ValueError("X must be >= 10")
    q, a = int(q), int(a)
    if not 1 <= a <= q:
        raise ValueError("need 1 <= a <= q")
    if gcd(a, q) != 1:
        raise ValueError("a and q must be coprime")
    acc = complex(0.0, 0.0)
    for j in range(1, math.isqrt(int(X)) + 1):
        g = gcd(q, j)
        qj = q // g
        aj = (a * (j // g)) % qj if qj > 1 else 1
        s = expsums.s_k_star(qj, aj, k).value
        acc += s / (j ** (1.0 + 1.0 / k) * nt.euler_phi(qj))
    if precision_bits <= 53:
        pref = (
            X ** (1.0 / k)
            * math.gamma(1.0 / k)
            / ((1.0 - 2.0j * math.pi * beta * X) ** (1.0 / k) * math.log(X))
        )
        return pref * acc
    with gmpy2.context(precision=precision_bits):
        inv_k = 1 / gmpy2.mpfr(k)
        z = gmpy2.mpc(1, -2 * gmpy2.const_pi() * beta * X)
        pref = (
            gmpy2.mpfr(X) ** inv_k
            * gmpy2.gamma(inv_k)
            / (z**inv_k * gmpy2.log(gmpy2.mpfr(X)))
        )
        return pref * gmpy2.mpc(acc)


@dataclass(frozen=True)
class RealPartReport:
    """Observed real-part deficit at one non-principal point alpha = a/q + beta."""

    X: float
    k: int
    q: int
    a: int
    beta: float
    lhs: float
    phi_rho: float
    ratio: float
    margin: float


def real_part_check(
    X: float,
    k: int,
    q: int,
    a: int,
    beta: float,
    A: float | None = None,
    eps: float = DEFAULT_EPS,
) -> RealPartReport:
    """Check |Re Phi(rho e(a/q + beta))| < Phi(rho) strictly at one point.

    The analytic bound has deficit delta_k/3, far below double resolution,
    so the implemented assertion is strict inequality with the observed
    margin reported.  q = 1 is rejected: at the principal point the ratio is
    exactly 1 and the bound is not claimed there.
    """
    X = float(X)
    q, a = int(q), int(a)
    if q < 2:
        raise ValueError("q must be >= 2 (the principal arc q = 1 has ratio 1)")
    if gcd(a, q) != 1:
        raise ValueError("a and q must be coprime")
    if A is None:
        A = 12.0 * k
    if abs(beta) > math.log(X) ** A / (q * X):
        raise ValueError(f"|beta| exceeds the arc half-width for A = {A:g}")
    lhs = abs(phi_complex(X, k, a / q + beta, eps).real)
    ph = phi(X, k, eps)
    ratio = lhs / ph
    if ratio >= 1.0:
        raise AssertionError(
            f"real-part bound violated at X={X:g} k={k} q={q} a={a} beta={beta:g}: "
            f"ratio = {ratio:.17g}"
        )
    return RealPartReport(X, k, q, a, beta, lhs, ph, ratio, 1.0 - ratio)


def real_part_sweep(
    X: float, k: int, q_max: int, A: float = 1.0, eps: float = DEFAULT_EPS
) -> list[RealPartReport]:
    """real_part_check over every (q, a), 2 <= q <= q_max, beta in {0, +-delta_q/2}.

    Shares the series term arrays across all sampled alpha, which makes the
    full grid orders of magnitude faster than pointwise calls.  Raises
    AssertionError on the first ratio >= 1, like real_part_check.
    """
    X = float(X)
    plan = make_plan(X, k, eps)
    j, t = _series_pairs(k, plan.Lambda * plan.X)
    tf = t.astype(np.float64)
    w = np.exp(-tf / X) / j
    ph = float(w.sum())
    half_width_num = math.log(X) ** A / X
    out = []
    for q in range(2, q_max + 1):
        half_dq = 0.5 * half_width_num / q
        for a in range(1, q):
            if gcd(a, q) != 1:
                continue
            for beta in (0.0, half_dq, -half_dq):
                alpha = a / q + beta
                ang = 2.0 * np.pi * ((tf * alpha) % 1.0)
                lhs = abs(float(w @ np.cos(ang)))
                ratio = lhs / ph
                if ratio >= 1.0:
                    raise AssertionError(
                        f"real-part bound violated at X={X:g} k={k} q={q} a={a} "
                        f"beta={beta:g}: ratio = {ratio:.17g}"
                    )
                out.append(
                    RealPartReport(X, k, q, a, beta, lhs, ph, ratio, 1.0 - ratio)
                )
    return out
