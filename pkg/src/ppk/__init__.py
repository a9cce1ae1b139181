"""Partitions into prime k-th powers.

Exact counts by dynamic programming, saddle-point estimates of their
growth, exact integer recovery through circle quadrature, and the
exponential-sum machinery behind the arc analysis.  The hot loops run in
a compiled extension when available; set PPK_PURE=1 to force the pure
Python fallback.
"""

from .asymptotics import (
    corollary_ratio_constant,
    difference_main_term,
    exceptional_constants,
    growth_estimates,
    main_term,
    major_arc_approx,
    real_part_check,
    simplified_constants,
    simplified_estimate,
)
from .counting import PartsSpec, brute_force_count, count_table
from .expsums import s_k, s_k_star
from .phi import phi, phi_complex, phi_m, solve_saddle
from .quadrature import arc_partition, arc_profile, cauchy_count

__version__ = "0.1.0"

__all__ = [
    "PartsSpec",
    "arc_partition",
    "arc_profile",
    "brute_force_count",
    "cauchy_count",
    "corollary_ratio_constant",
    "count_table",
    "difference_main_term",
    "exceptional_constants",
    "growth_estimates",
    "main_term",
    "major_arc_approx",
    "phi",
    "phi_complex",
    "phi_m",
    "real_part_check",
    "s_k",
    "s_k_star",
    "simplified_constants",
    "simplified_estimate",
    "solve_saddle",
    "__version__",
]
