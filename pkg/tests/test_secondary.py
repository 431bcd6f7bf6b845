"""Single-backbone structures: closed form against the brute-force oracle."""

import mpmath as mp
import pytest

from rnajoint import (
    CapExceeded,
    OutOfDomain,
    SecondaryParams,
    count_secondary_bruteforce,
    secondary_eval,
    secondary_gf,
    secondary_singularity,
    u_poly,
)

# frozen from the brute-force enumerator (count_secondary_bruteforce)
WATERMAN = [1, 1, 1, 2, 4, 8, 17, 37, 82]


def test_params_validation():
    with pytest.raises(ValueError):
        SecondaryParams(0, 2)
    with pytest.raises(ValueError):
        SecondaryParams(1, 1)


# ----------------------------------------------------------------------
# the stack-weight rational function
# ----------------------------------------------------------------------


def test_u_poly_sigma1_collapses():
    num, den = u_poly(SecondaryParams(1, 3))
    assert num.coefficient(0, 0) == 1 and num.degree_x == 0
    assert den.coefficient(0, 0) == 1 and den.degree_x == 0


def test_u_poly_sigma2():
    num, den = u_poly(SecondaryParams(2, 4))
    assert dict(num.terms()) == {(2, 0): 1}
    assert dict(den.terms()) == {(4, 0): 1, (2, 0): -1, (0, 0): 1}


def test_u_poly_sigma3():
    num, den = u_poly(SecondaryParams(3, 5))
    assert dict(num.terms()) == {(4, 0): 1}
    assert dict(den.terms()) == {(6, 0): 1, (2, 0): -1, (0, 0): 1}


# ----------------------------------------------------------------------
# the counting series
# ----------------------------------------------------------------------


def test_waterman_sequence():
    got = secondary_gf(SecondaryParams(1, 2), 8).integer_coeffs()
    assert got == WATERMAN
    oracle = [count_secondary_bruteforce(SecondaryParams(1, 2), n) for n in range(9)]
    assert oracle == WATERMAN


def test_canonical_min_arc4_first_nontrivial_size():
    # smallest admissible stack: two nested arcs of lengths 4 and 6, seven
    # vertices total, so sizes 0..6 only admit the empty structure
    params = SecondaryParams(2, 4)
    got = secondary_gf(params, 10).integer_coeffs()
    assert got[:7] == [1] * 7
    assert got[7] == 2
    assert got[7] == count_secondary_bruteforce(params, 7)


@pytest.mark.parametrize("sigma,min_arc", [(1, 2), (2, 4), (3, 5), (1, 5), (4, 6)])
def test_small_values_are_trivial(sigma, min_arc):
    t = secondary_gf(SecondaryParams(sigma, min_arc), 1)
    assert t.integer_coeffs() == [1, 1]


def test_coefficients_nonnegative_integers():
    for sigma, min_arc in [(1, 2), (2, 4), (3, 5)]:
        coeffs = secondary_gf(SecondaryParams(sigma, min_arc), 40).integer_coeffs()
        assert all(c >= 0 for c in coeffs)


def test_monotone_in_constraints():
    # stricter constraints admit fewer structures, coefficientwise
    base = secondary_gf(SecondaryParams(1, 2), 20).integer_coeffs()
    longer_arc = secondary_gf(SecondaryParams(1, 3), 20).integer_coeffs()
    taller_stack = secondary_gf(SecondaryParams(2, 2), 20).integer_coeffs()
    assert all(a >= b for a, b in zip(base, longer_arc))
    assert all(a >= b for a, b in zip(base, taller_stack))


# ----------------------------------------------------------------------
# the brute-force oracle
# ----------------------------------------------------------------------


def test_bruteforce_base_cases():
    assert count_secondary_bruteforce(SecondaryParams(1, 2), 0) == 1
    assert count_secondary_bruteforce(SecondaryParams(1, 2), 3) == 2


def test_bruteforce_cap():
    with pytest.raises(CapExceeded):
        count_secondary_bruteforce(SecondaryParams(1, 2), 19)
    # explicit caps may extend the default
    assert count_secondary_bruteforce(SecondaryParams(3, 5), 19, cap=19) > 0


@pytest.mark.parametrize(
    "sigma,min_arc,nmax", [(1, 2, 12), (2, 4, 12), (3, 5, 12), (1, 3, 10), (2, 5, 10)]
)
def test_oracle_matches_series(sigma, min_arc, nmax):
    params = SecondaryParams(sigma, min_arc)
    series = secondary_gf(params, nmax).integer_coeffs()
    for n in range(nmax + 1):
        assert series[n] == count_secondary_bruteforce(params, n)


# ----------------------------------------------------------------------
# numeric evaluation and the singularity
# ----------------------------------------------------------------------


def test_eval_at_origin():
    assert secondary_eval(SecondaryParams(1, 2), 0) == 1


def test_eval_matches_series_partial_sum():
    params = SecondaryParams(1, 2)
    series = secondary_gf(params, 60)
    with mp.workprec(160):
        x = mp.mpf("0.1")
        partial = mp.fsum(
            mp.mpf(int(series[n])) * x**n for n in range(61)
        )
        value = secondary_eval(params, x, 160)
        assert abs(value - partial) < mp.mpf("1e-20")


def test_eval_finite_near_singularity():
    params = SecondaryParams(1, 2)
    zeta = secondary_singularity(params)
    near = secondary_eval(params, zeta * (1 - mp.mpf("1e-8")))
    assert mp.isfinite(near)
    assert near < 10  # square-root singularity, not a pole


def test_eval_out_of_domain():
    params = SecondaryParams(1, 2)
    zeta = secondary_singularity(params)
    with pytest.raises(OutOfDomain):
        secondary_eval(params, zeta * (1 + mp.mpf("1e-6")))
    with pytest.raises(OutOfDomain):
        secondary_eval(params, -0.25)


def test_singularity_closed_form():
    # the branch equation for (1, 2) reduces to 2x = 1 - x + x^2
    zeta = secondary_singularity(SecondaryParams(1, 2))
    exact = (3 - mp.sqrt(5)) / 2
    assert abs(zeta - exact) < mp.mpf("1e-14")


def test_singularity_residual():
    for sigma in (1, 2, 3):
        params = SecondaryParams(sigma, sigma + 2)
        zeta = secondary_singularity(params)
        s = sigma
        u = zeta ** (2 * (s - 1)) / (zeta ** (2 * s) - zeta**2 + 1)
        v = 1 - zeta + u * mp.fsum(zeta**h for h in range(2, s + 3))
        assert abs(u * zeta**2 / v**2 - mp.mpf(1) / 4) < mp.mpf("1e-14")


def test_growth_rate_decreases_with_sigma():
    g2 = 1 / secondary_singularity(SecondaryParams(2, 4))
    g3 = 1 / secondary_singularity(SecondaryParams(3, 5))
    assert g3 < g2
    assert abs(g2 - mp.mpf("1.8489")) < 1e-4
