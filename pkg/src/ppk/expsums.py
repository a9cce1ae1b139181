"""Complete and coprime exponential sums over k-th power residues.

S_k(q, a) sums e(a l^k / q) over l = 1..q; the starred variant keeps only
l coprime to q.  Angles come from exact residues (a l^k mod q by modular
exponentiation) looked up in per-modulus trig tables, so every term is
rounded exactly once and sums that vanish identically come out far below
the 1e-9 q test tolerance.  The verify_* operations machine-check the
multiplicative structure: Moebius inversion down to the complete sums,
twisted multiplicativity across coprime moduli, exact vanishing above the
critical prime-power exponent, and the uniform bounds with their explicit
constants.  The sweep_* drivers run those checks exhaustively over ranges
sized for the test suite and report worst cases.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from . import nt
from .kernels import expsum_dot

_SIEVE_CAP = 10**8


@dataclass(frozen=True)
class ExpSumValue:
    """One evaluated exponential sum.

    method records the evaluation route: "direct" summation, "moebius"
    inversion through the complete sums, or a "multiplicative" product
    across coprime moduli.  |value| <= q always.
    """

    q: int
    a: int
    k: int
    value: complex
    method: str


@lru_cache(maxsize=1024)
def _power_residues(q: int, k: int, coprime: bool) -> np.ndarray:
    """l^k mod q for l = 1..q (only l coprime to q when asked).

    Cached per modulus; treat the returned array as read-only.
    """
    ls = range(1, q + 1)
    if coprime:
        ls = [l for l in ls if gcd(l, q) == 1]
    return np.array([pow(l, k, q) for l in ls], dtype=np.int64)


@lru_cache(maxsize=1024)
def _trig_tables(q: int) -> tuple[np.ndarray, np.ndarray]:
    """cos and sin of 2 pi r / q for r = 0..q-1 (read-only)."""
    theta = (2.0 * np.pi / q) * np.arange(q, dtype=np.float64)
    return np.cos(theta), np.sin(theta)


def _checked_qk(q: int, k: int) -> tuple[int, int]:
    q, k = int(q), int(k)
    if q < 1:
        raise ValueError("modulus q must be a positive integer")
    if k < 1:
        raise ValueError("power k must be a positive integer")
    return q, k


def s_k(q: int, a: int, k: int) -> ExpSumValue:
    """Complete sum of e(a l^k / q) over a full residue system mod q."""
    q, k = _checked_qk(q, k)
    a = int(a)
    res = _power_residues(q, k, False)
    cos_t, sin_t = _trig_tables(q)
    re, im = expsum_dot(res, a % q, q, cos_t, sin_t)
    return ExpSumValue(q=q, a=a, k=k, value=complex(re, im), method="direct")


def s_k_star(q: int, a: int, k: int) -> ExpSumValue:
    """Sum of e(a l^k / q) restricted to l coprime to q."""
    q, k = _checked_qk(q, k)
    a = int(a)
    res = _power_residues(q, k, True)
    cos_t, sin_t = _trig_tables(q)
    re, im = expsum_dot(res, a % q, q, cos_t, sin_t)
    return ExpSumValue(q=q, a=a, k=k, value=complex(re, im), method="direct")


def s_k_star_moebius(q: int, a: int, k: int) -> ExpSumValue:
    """The coprime sum assembled as sum over nu | q of mu(nu) S_k(q/nu, a nu^(k-1))."""
    q, k = _checked_qk(q, k)
    a = int(a)
    acc = complex(0.0, 0.0)
    for nu in nt.divisors(q):
        mu = nt.moebius(nu)
        if mu == 0:
            continue
        acc += mu * s_k(q // nu, a * pow(nu, k - 1), k).value
    return ExpSumValue(q=q, a=a, k=k, value=acc, method="moebius")


def uniform_constant(k: int) -> tuple[int | None, float | None]:
    """(C_k, ln C_k) in the uniform bound |S_k*(q,a)| <= C_k q^(-1/k) phi(q).

    C_2 = 128.  For k >= 3, C_k = k^pi(k^6) is astronomically large but
    exactly representable as a big integer; the log is what every numeric
    comparison actually uses.  Returns (None, None) once pi(k^6) would need
    a sieve past 1e8 (k >= 22).
    """
    k = int(k)
    if k < 2:
        raise ValueError("uniform bound constants start at k = 2")
    if k == 2:
        return 128, math.log(128.0)
    if k**6 > _SIEVE_CAP:
        return None, None
    npi = int(nt.sieve_primes(k**6).primes.size)
    return k**npi, npi * math.log(float(k))


@dataclass(frozen=True)
class IdentityCheck:
    """Two evaluations of the same sum and their absolute discrepancy."""

    ok: bool
    lhs: ExpSumValue
    rhs: ExpSumValue
    error: float
    tol: float


@dataclass(frozen=True)
class VanishingCheck:
    """Observed coprime sum at a prime-power modulus against its vanishing claim.

    claimed is True when ell exceeds the critical exponent gamma(p), in
    which case ok demands |value| <= tol; below the threshold no claim is
    made and ok is vacuously True.
    """

    ok: bool
    claimed: bool
    gamma: int
    value: ExpSumValue
    tol: float


@dataclass(frozen=True)
class BoundCheck:
    """Log-space comparison of |S_k*(q,a)| against its uniform bound.

    usage = exp(ln_abs - ln_bound) is the consumed fraction of the bound,
    0 for an exactly vanishing sum.
    """

    ok: bool
    q: int
    a: int
    k: int
    ln_abs: float
    ln_bound: float
    usage: float


def verify_multiplicativity(q: int, r: int, a: int, k: int) -> IdentityCheck:
    """Check S_k*(qr, a) = S_k*(q, a r^(k-1)) S_k*(r, a q^(k-1)).

    Requires (q,r) = (a,q) = (a,r) = 1; violations are rejected rather than
    reported, since the identity claims nothing there.
    """
    q, k = _checked_qk(q, k)
    r = int(r)
    a = int(a)
    if r < 1:
        raise ValueError("modulus r must be a positive integer")
    if gcd(q, r) != 1 or gcd(a, q) != 1 or gcd(a, r) != 1:
        raise ValueError(
            "multiplicativity requires (q,r) = (a,q) = (a,r) = 1; "
            "other inputs are outside the identity, not counterexamples"
        )
    lhs = s_k_star(q * r, a, k)
    rhs_value = (
        s_k_star(q, a * pow(r, k - 1), k).value
        * s_k_star(r, a * pow(q, k - 1), k).value
    )
    rhs = ExpSumValue(q=q * r, a=a, k=k, value=rhs_value, method="multiplicative")
    err = abs(lhs.value - rhs.value)
    tol = 1e-8 * q * r
    return IdentityCheck(ok=err <= tol, lhs=lhs, rhs=rhs, error=err, tol=tol)


def verify_vanishing(p: int, ell: int, a: int, k: int) -> VanishingCheck:
    """Check S_k*(p^ell, a) = 0 for ell above the critical exponent.

    The threshold is gamma = tau + 2 for p = 2 with 2 | k, else tau + 1,
    where p^tau exactly divides k.  For ell <= gamma the sum is evaluated
    and reported with no claim attached.
    """
    p, k = int(p), int(k)
    ell = int(ell)
    if not nt.is_prime(p):
        raise ValueError("p must be prime")
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    a = int(a)
    if a % p == 0:
        raise ValueError("a must not be divisible by p")
    gamma = nt.gamma_exponent(p, k)
    value = s_k_star(p**ell, a, k)
    tol = 1e-9 * nt.euler_phi(p**ell)
    claimed = ell > gamma
    ok = (not claimed) or abs(value.value) <= tol
    return VanishingCheck(ok=ok, claimed=claimed, gamma=gamma, value=value, tol=tol)


def verify_uniform_bound(q: int, a: int, k: int) -> BoundCheck:
    """Check |S_k*(q,a)| against 8 q^(-1/4) phi(q) (k=2) or C_k q^(-1/k) phi(q).

    The k >= 3 comparison runs in log space; C_k itself overflows any float.
    """
    q, k = _checked_qk(q, k)
    a = int(a)
    if k < 2:
        raise ValueError("the uniform bound is stated for k >= 2")
    if gcd(a, q) != 1:
        raise ValueError("a and q must be coprime")
    ab = abs(s_k_star(q, a, k).value)
    ln_phi = math.log(nt.euler_phi(q))
    if k == 2:
        ln_bound = math.log(8.0) - 0.25 * math.log(q) + ln_phi
    else:
        _, ln_c = uniform_constant(k)
        if ln_c is None:
            raise ValueError(f"C_{k} needs pi(k^6) beyond the sieve cap {_SIEVE_CAP}")
        ln_bound = ln_c - math.log(q) / k + ln_phi
    ln_abs = math.log(ab) if ab > 0.0 else float("-inf")
    usage = math.exp(ln_abs - ln_bound) if ab > 0.0 else 0.0
    return BoundCheck(
        ok=ln_abs <= ln_bound,
        q=q,
        a=a,
        k=k,
        ln_abs=ln_abs,
        ln_bound=ln_bound,
        usage=usage,
    )


@dataclass(frozen=True)
class SweepReport:
    """Aggregate outcome of one exhaustive verification sweep.

    worst_ratio is scaled so that <= 1 passes: discrepancy / tolerance for
    identity and vanishing checks, bound usage for bound checks.  worst_case
    identifies the extremal inputs.
    """

    kind: str
    k: int
    checked: int
    failures: int
    worst_ratio: float
    worst_case: tuple | None


def sweep_moebius(k: int, q_max: int = 300, tol_scale: float = 1e-9) -> SweepReport:
    """Direct vs Moebius-inverted coprime sums for all q <= q_max, coprime a."""
    checked = failures = 0
    worst, worst_case = 0.0, None
    for q in range(1, q_max + 1):
        for a in range(1, q + 1):
            if gcd(a, q) != 1:
                continue
            direct = s_k_star(q, a, k).value
            inverted = s_k_star_moebius(q, a, k).value
            ratio = abs(direct - inverted) / (tol_scale * q)
            checked += 1
            if ratio > worst:
                worst, worst_case = ratio, (q, a)
            if ratio > 1.0:
                failures += 1
    return SweepReport("moebius", k, checked, failures, worst, worst_case)


def sweep_multiplicativity(k: int, limit: int = 60) -> SweepReport:
    """Twisted multiplicativity over coprime q < r <= limit, a <= q coprime to qr."""
    checked = failures = 0
    worst, worst_case = 0.0, None
    for q in range(1, limit + 1):
        for r in range(q + 1, limit + 1):
            if gcd(q, r) != 1:
                continue
            for a in range(1, q + 1):
                if gcd(a, q * r) != 1:
                    continue
                chk = verify_multiplicativity(q, r, a, k)
                ratio = chk.error / chk.tol
                checked += 1
                if ratio > worst:
                    worst, worst_case = ratio, (q, r, a)
                if not chk.ok:
                    failures += 1
    return SweepReport("multiplicativity", k, checked, failures, worst, worst_case)


def sweep_vanishing(k: int, cap: int = 4096) -> SweepReport:
    """Exact vanishing at every prime power p^ell <= cap with ell > gamma(p)."""
    checked = failures = 0
    worst, worst_case = 0.0, None
    for p in (int(v) for v in nt.sieve_primes(cap).primes):
        ell = nt.gamma_exponent(p, k) + 1
        while p**ell <= cap:
            for a in range(1, p):
                chk = verify_vanishing(p, ell, a, k)
                ratio = abs(chk.value.value) / chk.tol
                checked += 1
                if ratio > worst:
                    worst, worst_case = ratio, (p, ell, a)
                if not chk.ok:
                    failures += 1
            ell += 1
    return SweepReport("vanishing", k, checked, failures, worst, worst_case)


def sweep_uniform(
    k: int, q_max: int = 2000, full_a_below: int = 500
) -> SweepReport:
    """Uniform bound for all q <= q_max; every coprime a up to full_a_below,
    past that the representatives {1, q-1, smallest prime not dividing q}."""
    checked = failures = 0
    worst, worst_case = 0.0, None
    for q in range(1, q_max + 1):
        if q <= full_a_below:
            a_values = [a for a in range(1, q + 1) if gcd(a, q) == 1]
        else:
            rep = 2
            while q % rep == 0 or not nt.is_prime(rep):
                rep += 1
            a_values = sorted({1, q - 1, rep})
        for a in a_values:
            chk = verify_uniform_bound(q, a, k)
            checked += 1
            if chk.usage > worst:
                worst, worst_case = chk.usage, (q, a)
            if not chk.ok:
                failures += 1
    return SweepReport("uniform-bound", k, checked, failures, worst, worst_case)


def sweep_gauss(p_max: int = 200, tol_scale: float = 1e-8) -> SweepReport:
    """|S_2*(p,a)|^2 = (p-1) - S_2*(p,a) - S_2*(p,-a) for odd primes p, all a."""
    checked = failures = 0
    worst, worst_case = 0.0, None
    for p in (int(v) for v in nt.sieve_primes(p_max).primes):
        if p == 2:
            continue
        for a in range(1, p):
            s_pos = s_k_star(p, a, 2).value
            s_neg = s_k_star(p, -a, 2).value
            err = abs(abs(s_pos) ** 2 - ((p - 1) - s_pos - s_neg))
            ratio = err / (tol_scale * p)
            checked += 1
            if ratio > worst:
                worst, worst_case = ratio, (p, a)
            if ratio > 1.0:
                failures += 1
    return SweepReport("gauss-identity", 2, checked, failures, worst, worst_case)


def sweep_conjugation(
    k: int, q_max: int = 200, tol_scale: float = 1e-10
) -> SweepReport:
    """s_k_star(q, -a) = conj(s_k_star(q, a)) over all q <= q_max, coprime a."""
    checked = failures = 0
    worst, worst_case = 0.0, None
    for q in range(1, q_max + 1):
        for a in range(1, q + 1):
            if gcd(a, q) != 1:
                continue
            fwd = s_k_star(q, a, k).value
            bwd = s_k_star(q, -a, k).value
            ratio = abs(bwd - fwd.conjugate()) / (tol_scale * q)
            checked += 1
            if ratio > worst:
                worst, worst_case = ratio, (q, a)
            if ratio > 1.0:
                failures += 1
    return SweepReport("conjugation", k, checked, failures, worst, worst_case)
