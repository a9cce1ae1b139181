"""Number-theoretic primitives shared by the rest of the package.

Provides:
    sieve_primes      segmented Sieve of Eratosthenes, bounded memory
    introot           integer k-th root
    euler_phi         Euler totient
    moebius           Moebius function
    divisors          ascending list of positive divisors
    factorize         trial-division factorization
    is_prime          trial-division primality check
    p_adic_valuation  exponent of a prime p in an integer k
    gamma_exponent    vanishing threshold gamma(p) for coprime power sums
"""

from dataclasses import dataclass
from math import isqrt

import numpy as np

_SEGMENT = 1 << 20


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Ascending primes up to an inclusive bound.

    Attributes:
        limit: the sieving bound; every prime <= limit is present.
        primes: strictly increasing int64 array of primes.
    """

    limit: int
    primes: np.ndarray


def _simple_sieve(limit: int) -> np.ndarray:
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.nonzero(mask)[0].astype(np.int64)


def sieve_primes(limit: int) -> PrimeTable:
    """Sieve all primes <= limit.

    Uses a simple sieve up to sqrt(limit) and then fixed-size segments, so
    the working set stays bounded even for limits in the 1e9 range (reached
    by the k=1 series at large X).

    Args:
        limit: inclusive upper bound, >= 0.

    Returns:
        PrimeTable with a strictly increasing int64 array.
    """
    limit = int(limit)
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    if limit < 2:
        return PrimeTable(limit, np.empty(0, dtype=np.int64))
    root = isqrt(limit)
    base = _simple_sieve(root)
    chunks = [base]
    lo = root + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT - 1, limit)
        seg = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            start = ((lo + p - 1) // p) * p
            seg[start - lo :: p] = False
        chunks.append(np.nonzero(seg)[0].astype(np.int64) + lo)
        lo = hi + 1
    return PrimeTable(limit, np.concatenate(chunks))


def introot(n: int, k: int) -> int:
    """Largest r >= 0 with r**k <= n."""
    n, k = int(n), int(k)
    if n < 0:
        raise ValueError("introot requires n >= 0")
    if k < 1:
        raise ValueError("introot requires k >= 1")
    if n == 0:
        return 0
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] with p ascending, by trial division."""
    n = int(n)
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(p: int) -> bool:
    p = int(p)
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def euler_phi(q: int) -> int:
    """Number of 1 <= l <= q coprime to q."""
    q = int(q)
    if q < 1:
        raise ValueError("euler_phi requires q >= 1")
    out = q
    for p, _ in factorize(q):
        out -= out // p
    return out


def moebius(v: int) -> int:
    """Moebius function: (-1)^omega on squarefree v, else 0."""
    v = int(v)
    if v < 1:
        raise ValueError("moebius requires v >= 1")
    fac = factorize(v)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def divisors(q: int) -> list[int]:
    """All positive divisors of q, ascending."""
    q = int(q)
    if q < 1:
        raise ValueError("divisors requires q >= 1")
    out = [1]
    for p, e in factorize(q):
        out = [d * p**i for d in out for i in range(e + 1)]
    return sorted(out)


def p_adic_valuation(p: int, k: int) -> int:
    """Largest tau with p^tau dividing k, for prime p.

    Args:
        p: a prime (verified by trial division).
        k: positive integer.
    """
    p, k = int(p), int(k)
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if k < 1:
        raise ValueError("k must be positive")
    tau = 0
    while k % p == 0:
        k //= p
        tau += 1
    return tau


def gamma_exponent(p: int, k: int) -> int:
    """Threshold gamma(p) beyond which the coprime power sums vanish.

    gamma = tau + 2 when p = 2 and tau > 0, else tau + 1, where p^tau || k.
    The coprime sum over moduli p^l is zero for every l > gamma.
    """
    tau = p_adic_valuation(p, k)
    if p == 2 and tau > 0:
        return tau + 2
    return tau + 1
