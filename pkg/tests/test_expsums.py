"""Exponential sums: a floating-angle oracle, identities, and the sweeps."""

import cmath
import math

import pytest

from ppk import expsums, nt


def _naive_s(q, a, k, coprime):
    """Direct complex exponential sum with floating-point angles.

    Shares nothing with the library path, which works through exact power
    residues mod q and per-q trig tables.
    """
    total = 0.0 + 0.0j
    for ell in range(1, q + 1):
        if coprime and math.gcd(ell, q) != 1:
            continue
        total += cmath.exp(2j * cmath.pi * a * pow(ell, k) / q)
    return total


@pytest.mark.parametrize("k", [1, 2, 3])
def test_against_floating_angle_oracle(k):
    for q in range(1, 50):
        for a in (1, q - 1 if q > 1 else 1, (q // 2) or 1):
            got = expsums.s_k(q, a, k)
            assert got.method == "direct"
            assert got.value == pytest.approx(_naive_s(q, a, k, False), abs=1e-9 * q)
            star = expsums.s_k_star(q, a, k)
            assert star.value == pytest.approx(_naive_s(q, a, k, True), abs=1e-9 * q)


def test_k1_coprime_sum_is_moebius():
    # Ramanujan sum at coprime argument
    for q in (1, 2, 6, 10, 15, 30, 36, 49):
        v = expsums.s_k_star(q, 1, 1).value
        assert v.real == pytest.approx(nt.moebius(q), abs=1e-10)
        assert v.imag == pytest.approx(0.0, abs=1e-10)


def test_full_sum_at_modulus_one():
    assert expsums.s_k(1, 1, 2).value == pytest.approx(1.0)
    assert expsums.s_k_star(1, 1, 2).value == pytest.approx(1.0)


def test_quadratic_gauss_p5():
    # sum over all residues mod 5 of e(l^2/5) = sqrt(5) for 5 = 1 mod 4;
    # the coprime sum drops the l = 5 term
    s = expsums.s_k_star(5, 1, 2).value
    assert s == pytest.approx(math.sqrt(5.0) - 1.0, abs=1e-10)


def test_moebius_inversion_spot():
    direct = expsums.s_k_star(36, 5, 2)
    inverted = expsums.s_k_star_moebius(36, 5, 2)
    assert inverted.method == "moebius"
    assert inverted.value == pytest.approx(direct.value, abs=1e-8)


def test_multiplicativity_identity():
    chk = expsums.verify_multiplicativity(4, 9, 1, 2)
    assert chk.ok
    assert chk.rhs.method == "multiplicative"
    assert chk.lhs.value == pytest.approx(chk.rhs.value, abs=chk.tol)


def test_multiplicativity_requires_coprimality():
    with pytest.raises(ValueError):
        expsums.verify_multiplicativity(4, 6, 1, 2)
    with pytest.raises(ValueError):
        expsums.verify_multiplicativity(4, 9, 2, 2)


def test_vanishing_beyond_gamma():
    # k = 2: gamma(2) = 3, gamma(odd p) = 1
    chk = expsums.verify_vanishing(2, 4, 1, 2)
    assert chk.claimed and chk.ok
    assert abs(chk.value.value) <= chk.tol
    chk = expsums.verify_vanishing(3, 2, 1, 2)
    assert chk.claimed and chk.ok
    # at ell = gamma the sum need not vanish
    chk = expsums.verify_vanishing(3, 1, 1, 2)
    assert not chk.claimed


def test_uniform_bound_examples():
    chk = expsums.verify_uniform_bound(60, 29, 2)
    assert chk.ok
    assert 0.0 < chk.usage <= 1.0
    chk3 = expsums.verify_uniform_bound(100, 3, 3)
    assert chk3.ok


def test_uniform_bound_rejects_k1():
    with pytest.raises(ValueError):
        expsums.verify_uniform_bound(10, 3, 1)


@pytest.mark.parametrize("k", [1, 2])
def test_sweep_moebius_clean(k):
    rep = expsums.sweep_moebius(k, q_max=60)
    assert rep.failures == 0
    assert rep.checked > 0
    assert rep.worst_ratio <= 1.0


def test_sweep_multiplicativity_clean():
    rep = expsums.sweep_multiplicativity(2, limit=24)
    assert rep.failures == 0
    assert rep.checked > 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_sweep_vanishing_clean(k):
    rep = expsums.sweep_vanishing(k, cap=512)
    assert rep.failures == 0
    assert rep.checked > 0


@pytest.mark.parametrize("k", [2, 3])
def test_sweep_uniform_clean(k):
    rep = expsums.sweep_uniform(k, q_max=200, full_a_below=200)
    assert rep.failures == 0
    assert rep.worst_ratio <= 1.0


def test_sweep_gauss_clean():
    rep = expsums.sweep_gauss(p_max=60)
    assert rep.failures == 0
    assert rep.checked > 0


def test_sweep_conjugation_clean():
    rep = expsums.sweep_conjugation(2, q_max=40)
    assert rep.failures == 0


def test_uniform_constant_values():
    c2, ln2 = expsums.uniform_constant(2)
    assert c2 == 128 and ln2 == pytest.approx(math.log(128.0))
    c3, ln3 = expsums.uniform_constant(3)
    assert c3 == 3**129
    assert ln3 == pytest.approx(129.0 * math.log(3.0), rel=1e-12)
    c_big, ln_big = expsums.uniform_constant(50)
    assert c_big is None and ln_big is None


def test_validation_errors():
    with pytest.raises(ValueError):
        expsums.s_k(0, 1, 2)
    with pytest.raises(ValueError):
        expsums.s_k(5, 1, 0)
    with pytest.raises(ValueError):
        expsums.verify_vanishing(4, 2, 1, 2)  # p must be prime
    with pytest.raises(ValueError):
        expsums.verify_vanishing(3, 2, 3, 2)  # a divisible by p
