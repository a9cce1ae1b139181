"""Integer recovery from the circle integral, and the arc diagnostics."""

import math
import warnings
from fractions import Fraction

import gmpy2
import pytest

from ppk import hp, quadrature
from ppk.counting import PartsSpec, count_table
from ppk.phi import _series_pairs, make_plan, phi_complex, solve_saddle
from ppk.quadrature import (
    arc_partition,
    arc_profile,
    cauchy_count,
    gaussian_main_term_quadrature,
    section_six_cutoffs,
)


@pytest.fixture(scope="module")
def tables():
    return {k: count_table(PartsSpec.prime_powers(k), 64) for k in (1, 2, 3)}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_recovers_exact_counts(k, tables):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for n in (4, 5, 7, 12, 25, 40, 64):
            res = cauchy_count(n, k)
            assert res.count == tables[k].counts[n]
            assert res.residual < 0.25
            assert res.tail_log_bound < math.log(0.25)


def test_result_fields(tables):
    res = cauchy_count(40, 2)
    assert res.n == 40 and res.k == 2
    assert res.M % 8 == 0
    assert res.precision_bits == 256


def test_stable_under_precision_and_doubling(tables):
    a = cauchy_count(64, 2, precision_bits=256)
    b = cauchy_count(64, 2, precision_bits=192)
    c = cauchy_count(64, 2, extra_doublings=1)
    assert a.count == b.count == c.count == tables[2].counts[64]
    assert c.M == 2 * a.M


def test_validation():
    with pytest.raises(ValueError):
        cauchy_count(3, 2)
    with pytest.raises(ValueError):
        cauchy_count(50, 2, precision_bits=64)
    with pytest.raises(ValueError):
        cauchy_count(50, 2, extra_doublings=-1)


def test_grid_matches_independent_high_precision_evaluation():
    """The transform pipeline vs per-point exact-angle summation, 1e-20."""
    n, k, bits = 500, 2, 256
    sp = solve_saddle(n, k)
    X = sp.X
    plan = make_plan(X, k, 1e-18)
    lam_x = max(plan.Lambda * X, float(n + 1))
    j_arr, t_arr = _series_pairs(k, lam_x)
    M = 8 * math.ceil(X) * 4  # the accepted grid size for this n
    classes = (t_arr % M).tolist()
    with gmpy2.context(precision=bits):
        Xhp = gmpy2.mpfr(X)
        weights = [gmpy2.mpfr(0)] * M
        for jj, tt, c in zip(j_arr.tolist(), t_arr.tolist(), classes):
            weights[c] += gmpy2.exp(gmpy2.mpfr(-tt) / Xhp) / jj
        roots = hp.unit_roots(M, bits)
        grid = hp.fourier_grid(weights, roots)
        for m in (1, M // 7, M // 3, M // 2, M - 1):
            direct = phi_complex(X, k, Fraction(m, M), eps=1e-18, precision_bits=bits)
            rel = abs(grid[m] - direct) / abs(direct)
            assert float(rel) < 1e-20


def test_cutoffs_scale():
    tau, eta = section_six_cutoffs(1e4, 2)
    assert tau == pytest.approx(math.log(1e4) ** -0.25 / 1e4, rel=1e-12)
    assert eta == pytest.approx(1e4**-1.25 * math.log(1e4) ** 2, rel=1e-12)
    with pytest.raises(ValueError):
        section_six_cutoffs(5.0, 2)


def test_arc_partition_q3():
    # A chosen so Q = 3: exactly the arcs at 0/1, 1/2, 1/3, 2/3
    X = 50.0
    A = math.log(3.0) / math.log(math.log(X))
    part = arc_partition(X, 2, A)
    assert part.Q == pytest.approx(3.0, rel=1e-12)
    assert [(a.q, a.a) for a in part.arcs] == [(1, 0), (2, 1), (3, 1), (3, 2)]
    assert part.arcs[0].half_width == pytest.approx(part.Q / X, rel=1e-12)
    assert part.arcs[1].half_width == pytest.approx(part.Q / (2 * X), rel=1e-12)
    assert not part.overlapping
    assert not part.covers
    want = 2.0 * part.Q / X * (1.0 + 0.5 + 2.0 / 3.0)
    assert part.total_measure == pytest.approx(want, rel=1e-12)


def test_arc_partition_overlap_detected():
    part = arc_partition(12.0, 2, A=2.0)
    assert part.overlapping
    if part.covers:
        assert part.total_measure == pytest.approx(1.0, abs=1e-9)


def test_arc_partition_vacuous_rejected():
    with pytest.raises(ValueError):
        arc_partition(169.7, 2, A=24.0)
    with pytest.raises(ValueError):
        arc_partition(100.0, 2, A=-1.0)


def test_arc_partition_default_exponent_is_vacuous_at_desk_scale():
    with pytest.raises(ValueError):
        arc_partition(904.7, 2)  # A = 12k = 24


def test_arc_profile_labels():
    prof = arc_profile(1000, 2, samples=64, A=1.0)
    regions = {row.region for row in prof.rows}
    assert regions == {"principal", "major", "minor"}
    # alpha = 0 sits on the principal arc
    center_rows = [row for row in prof.rows if row.alpha == 0.0]
    assert center_rows and center_rows[0].region == "principal"
    for row in prof.rows:
        if row.region == "minor":
            assert row.arc_q is None
        else:
            assert row.arc_q >= 1
    # profile peaks at the center of the principal arc
    peak = max(prof.rows, key=lambda r: r.log_abs_integrand)
    assert peak.region == "principal"


def test_arc_profile_csv_shape():
    prof = arc_profile(1000, 2, samples=16, A=1.0)
    lines = prof.csv_lines()
    assert lines[0] == "alpha,log_abs_integrand,arc_q,arc_a,region"
    assert len(lines) == 17
    first = lines[1].split(",")
    assert first[0] == "-0.5"
    assert first[4] in ("principal", "major", "minor")


def test_arc_profile_validates_samples():
    with pytest.raises(ValueError):
        arc_profile(1000, 2, samples=8)


def test_gaussian_matches_main_term_at_scale():
    from ppk.asymptotics import main_term

    g = gaussian_main_term_quadrature(10**4, 2)
    m = main_term(10**4, 2).log_value
    assert g == pytest.approx(m, rel=1e-6)


def test_gaussian_difference_version_consistent():
    from ppk.asymptotics import difference_main_term, main_term

    n, k = 10**4, 2
    g = gaussian_main_term_quadrature(n, k)
    est = main_term(n, k)
    diff = difference_main_term(n, k)
    assert g - math.log(est.saddle.X) == pytest.approx(
        diff + (g - est.log_value), rel=1e-12
    )


def test_gaussian_validates():
    with pytest.raises(ValueError):
        gaussian_main_term_quadrature(5, 2)
