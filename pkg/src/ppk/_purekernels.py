"""Pure-Python kernel fallbacks, used when the compiled extension is absent.

Same signatures and semantics as ppk._kernels; see that module for the
authoritative docstrings.  math.fsum stands in for the compensated
accumulation of the compiled exp-weighted dot products.
"""

import math

import numpy as np


def dp_accumulate(counts, parts):
    n_max = len(counts) - 1
    for a in parts:
        a = int(a)
        for m in range(a, n_max + 1):
            counts[m] += counts[m - a]


def expsum_dot(residues, a, q, cos_tab, sin_tab):
    idx = (int(a) * residues) % int(q)
    return float(cos_tab[idx].sum()), float(sin_tab[idx].sum())


def exp_dot(t, c, inv_x):
    return math.fsum(c * np.exp(-inv_x * t))


def exp_dot2(t, c1, c2, inv_x):
    w = np.exp(-inv_x * t)
    return math.fsum(c1 * w), math.fsum(c2 * w)
