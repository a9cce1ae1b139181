"""High-precision unit-root tables and a mixed-radix discrete Fourier transform.

Small layer over gmpy2 used by the integer-recovery quadrature: a root
table e(r/M) built from exact rational angles, and a length-M transform
with the positive-sign kernel out[m] = sum_r values[r] e(+rm/M).  The
transform recurses radix-2 down to the odd part of M and finishes with a
naive DFT there, so M = 2^s * b needs only the one precomputed table and
performs a fixed, deterministic operation order for a given M.

unit_roots manages its own precision context; fourier_grid and the helpers
run in the caller's context, so wrap the whole pipeline in a single
``with gmpy2.context(precision=bits):`` block.
"""

import gmpy2


def unit_roots(M: int, bits: int) -> list:
    """Table of e(r/M) = cos + i sin of 2 pi r / M for r = 0..M-1.

    Angles are formed from the exact rationals r/M before rounding, so the
    table is a pure function of (M, bits).
    """
    M = int(M)
    if M < 1:
        raise ValueError("M must be a positive integer")
    if bits < 53:
        raise ValueError("bits must be >= 53")
    out = []
    with gmpy2.context(precision=bits):
        two_pi = 2 * gmpy2.const_pi()
        for r in range(M):
            ang = two_pi * gmpy2.mpfr(gmpy2.mpq(r, M))
            s, c = gmpy2.sin_cos(ang)
            out.append(gmpy2.mpc(c, s))
    return out


def fourier_grid(values: list, roots: list) -> list:
    """All M outputs of out[m] = sum_r values[r] * e(+rm/M).

    values may be mpfr or mpc; roots must be unit_roots(M, bits) with
    M = len(values).  Runs in the caller's gmpy2 context.
    """
    M = len(values)
    if len(roots) != M:
        raise ValueError("root table length must equal the number of values")
    return _fft(values, roots, 1, 0)


def _fft(values, roots, stride, offset):
    """Transform of the subsequence values[offset::stride].

    The subsequence has length M/stride and its twiddle e(m/(M/stride))
    is roots[m*stride]; halving bottoms out at odd length.
    """
    M = len(values)
    n = M // stride
    if n % 2 == 1:
        return _dft(values, roots, stride, offset)
    half = n // 2
    even = _fft(values, roots, stride * 2, offset)
    odd = _fft(values, roots, stride * 2, offset + stride)
    out = [None] * n
    for m in range(half):
        t = roots[m * stride] * odd[m]
        out[m] = even[m] + t
        out[m + half] = even[m] - t
    return out


def _dft(values, roots, stride, offset):
    """Naive transform of values[offset::stride] (odd length)."""
    M = len(values)
    n = M // stride
    out = []
    for m in range(n):
        step = (m * stride) % M
        idx = 0
        acc = gmpy2.mpc(0)
        for r in range(n):
            acc = acc + values[offset + r * stride] * roots[idx]
            idx += step
            if idx >= M:
                idx -= M
        out.append(acc)
    return out
