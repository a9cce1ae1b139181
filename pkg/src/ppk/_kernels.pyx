# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops.

Three kernels dominate the package's runtime and are poor fits for numpy:
the big-integer partition DP (object arithmetic), residue-table accumulation
for exponential sums (integer mod chain per term), and the compensated
exp-weighted dot products behind the series evaluations (error-free
accumulation).  Each has a drop-in fallback in ppk._purekernels.
"""

from libc.math cimport exp, fabs


def dp_accumulate(list counts, long long[::1] parts):
    """In-place Euler-product DP: for each part a, counts[m] += counts[m-a].

    counts is a Python list of arbitrary-precision ints, counts[0..N];
    parts must be ascending.  The outer/inner loop order (parts outer,
    m ascending from a) makes every intermediate state a valid count
    table over a prefix of the parts list.
    """
    cdef Py_ssize_t n_max = len(counts) - 1
    cdef Py_ssize_t i, m
    cdef long long a
    for i in range(parts.shape[0]):
        a = parts[i]
        for m in range(a, n_max + 1):
            counts[m] = counts[m] + counts[m - a]


def expsum_dot(long long[::1] residues, long long a, long long q,
               double[::1] cos_tab, double[::1] sin_tab):
    """Sum of e(a r / q) over a residue array r, via lookup tables.

    cos_tab/sin_tab hold cos/sin of 2 pi r / q for r = 0..q-1; a must be
    reduced mod q by the caller so a * r stays well inside 64 bits.
    Returns (real, imag).
    """
    cdef double re = 0.0, im = 0.0
    cdef Py_ssize_t i
    cdef long long r
    with nogil:
        for i in range(residues.shape[0]):
            r = (a * residues[i]) % q
            re += cos_tab[r]
            im += sin_tab[r]
    return re, im


def exp_dot(double[::1] t, double[::1] c, double inv_x):
    """Neumaier-compensated sum of c[i] * exp(-t[i] * inv_x)."""
    cdef double s = 0.0, comp = 0.0, term, y
    cdef Py_ssize_t i
    with nogil:
        for i in range(t.shape[0]):
            term = c[i] * exp(-t[i] * inv_x)
            y = s + term
            if fabs(s) >= fabs(term):
                comp += (s - y) + term
            else:
                comp += (term - y) + s
            s = y
    return s + comp


def exp_dot2(double[::1] t, double[::1] c1, double[::1] c2, double inv_x):
    """Two compensated exp-weighted dots sharing a single exp() pass."""
    cdef double s1 = 0.0, comp1 = 0.0, s2 = 0.0, comp2 = 0.0
    cdef double w, term, y
    cdef Py_ssize_t i
    with nogil:
        for i in range(t.shape[0]):
            w = exp(-t[i] * inv_x)
            term = c1[i] * w
            y = s1 + term
            if fabs(s1) >= fabs(term):
                comp1 += (s1 - y) + term
            else:
                comp1 += (term - y) + s1
            s1 = y
            term = c2[i] * w
            y = s2 + term
            if fabs(s2) >= fabs(term):
                comp2 += (s2 - y) + term
            else:
                comp2 += (term - y) + s2
            s2 = y
    return s1 + comp1, s2 + comp2
