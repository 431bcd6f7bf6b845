"""Singularity analysis: the singular polynomial, roots, and constants."""

from fractions import Fraction

import mpmath as mp
import pytest

from rnajoint import (
    PoorConvergence,
    SecondaryParams,
    asymptotic_table,
    dominant_singularity,
    estimate_asymptotics,
    extract_growth_constant,
    q_polynomial,
    secondary_eval,
    secondary_singularity,
)

SQRT_PI_INV = 1 / mp.sqrt(mp.pi)


def catalan_numbers(n):
    out = [1]
    for k in range(n):
        out.append(out[-1] * 2 * (2 * k + 1) // (k + 2))
    return out


# ----------------------------------------------------------------------
# the singular polynomial
# ----------------------------------------------------------------------


@pytest.mark.parametrize("sigma", [1, 2, 3, 5])
def test_q_has_five_even_y_powers(sigma):
    q = q_polynomial(sigma)
    assert q.y_degrees() == (0, 2, 4, 6, 8)


def test_q_constant_term():
    for sigma in (1, 2, 4):
        assert q_polynomial(sigma).coefficient(0, 0) == 1


@pytest.mark.parametrize("sigma", [1, 2, 3])
def test_q_top_y_coefficient(sigma):
    q = q_polynomial(sigma)
    top = {(i, j): c for (i, j), c in q.terms() if j == 8}
    assert top == {(8 * sigma, 8): 1}


def test_q_vanishes_at_the_singularity():
    q = q_polynomial(2)
    kappa = dominant_singularity(2)
    t = secondary_eval(SecondaryParams(2, 4), kappa)
    assert abs(q.eval(kappa, t)) < mp.mpf("1e-10")
    assert abs(1 / kappa - mp.mpf("2.18096")) < 1e-4


# ----------------------------------------------------------------------
# the dominant singularity
# ----------------------------------------------------------------------


def test_spot_growth_rates():
    assert abs(1 / dominant_singularity(1) - mp.mpf("3.30027")) < 1e-4
    assert abs(1 / dominant_singularity(2) - mp.mpf("2.18096")) < 1e-4


def test_kappa_increases_with_sigma_and_stays_below_zeta():
    prev = mp.mpf(0)
    for sigma in range(1, 6):
        kappa = dominant_singularity(sigma)
        zeta = secondary_singularity(SecondaryParams(sigma, sigma + 2))
        assert prev < kappa < zeta < 1
        prev = kappa


def test_sigma_validation():
    with pytest.raises(ValueError):
        dominant_singularity(0)


# ----------------------------------------------------------------------
# constant extraction
# ----------------------------------------------------------------------


def test_extractor_recovers_catalan_constant():
    cats = catalan_numbers(60)
    c = extract_growth_constant(cats, mp.mpf(1) / 4)
    assert abs(c - SQRT_PI_INV) / SQRT_PI_INV < 0.01


def test_extractor_recovers_scaled_sqrt_model():
    # coefficients of 3 - 5 (1 - 3 z)^(1/2): constant 5/(2 sqrt(pi)), rate 3
    rho_inv = 3
    coeffs = [Fraction(-2)]
    binom = Fraction(1)
    for n in range(1, 61):
        binom = binom * (Fraction(1, 2) - (n - 1)) / n
        coeffs.append(-5 * binom * (-rho_inv) ** n)
    c = extract_growth_constant(coeffs, mp.mpf(1) / rho_inv)
    target = 5 / (2 * mp.sqrt(mp.pi))
    assert abs(c - target) / target < 0.01


def test_extractor_flags_oscillation():
    wobble = [(2 + (-1) ** s) * 4**s for s in range(61)]
    with pytest.raises(PoorConvergence):
        extract_growth_constant(wobble, mp.mpf(1) / 4)


def test_extractor_needs_enough_coefficients():
    with pytest.raises(ValueError):
        extract_growth_constant([1, 2, 3], mp.mpf(1) / 2)


# ----------------------------------------------------------------------
# assembled estimates
# ----------------------------------------------------------------------


def test_estimate_record_fields():
    est = estimate_asymptotics(2, order=60)
    assert est.sigma == 2
    assert est.verified_unique is True
    assert est.exponent == Fraction(-3, 2)
    assert abs(est.kappa * est.kappa_inv - 1) < mp.mpf("1e-30")
    assert 0 < est.kappa < 1
    assert est.c > 0
    assert abs(est.c - mp.mpf("3.51610")) / mp.mpf("3.51610") < 0.01


def test_estimate_outside_verified_range_is_flagged():
    est = estimate_asymptotics(6, order=60)
    assert est.verified_unique is False
    assert est.c > 0


def test_asymptotic_table_rows():
    rows = asymptotic_table(2, [0, 1, 40, 60], order=60)
    assert rows[0] == (0, 1, None, None)
    s1 = rows[1]
    assert s1[0] == 1 and s1[1] == 2 and s1[2] is not None
    dev40 = abs(rows[2][3] - 1)
    dev60 = abs(rows[3][3] - 1)
    assert dev60 < dev40 < mp.mpf("0.1")


def test_asymptotic_table_bounds_check():
    with pytest.raises(ValueError):
        asymptotic_table(2, [10], order=5)
