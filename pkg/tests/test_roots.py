"""Certified real-root isolation and the exact polynomial identities."""

from fractions import Fraction

import pytest

from growthcert.series import ONE, Polynomial, X
from growthcert.roots import (
    RootError,
    bs2_rate_polynomial,
    certify_less_equal,
    distance_upper_bound,
    equal_length_bound_polynomial,
    free_monoid_bound_polynomial,
    golden_ratio_polynomial,
    growth_rate_polynomial,
    identity_suite,
    isolate_smallest_positive_root,
    lamplighter_pole_polynomial,
    plastic_number_polynomial,
    reciprocal_polynomial,
    sign_variations,
    silver_ratio_polynomial,
    unique_positive_root,
    verify_inequality_chain,
)

GOLDEN = (1 + 5**0.5) / 2
SILVER = 1 + 2**0.5
TIGHT = Fraction(1, 10**13)


def test_sign_variations():
    assert sign_variations(Polynomial([-2, 0, -1, 1])) == 1
    assert sign_variations(Polynomial([1, -3, 3, -1])) == 3
    assert sign_variations(Polynomial([1, 0, 2])) == 0
    assert sign_variations(Polynomial([0, -1, 0, 4])) == 1


def test_unique_positive_root_sqrt2():
    interval = unique_positive_root(Polynomial([-2, 0, 1]), tol=TIGHT)
    assert interval.lo <= Fraction(2**0.5) <= interval.hi or abs(interval.to_float() - 2**0.5) < 1e-12
    assert interval.width <= TIGHT
    assert interval.verify()


def test_unique_positive_root_exact_rational_hit():
    # (x - 2)(x + 1): one sign variation, integer root found exactly
    poly = (X - 2 * ONE) * (X + ONE)
    interval = unique_positive_root(poly, tol=TIGHT)
    assert interval.is_exact() and interval.lo == 2


def test_unique_positive_root_rejects_multiple_variations():
    # (x-1)(x-2) has two positive roots
    with pytest.raises(RootError):
        unique_positive_root(Polynomial([2, -3, 1]))
    # no positive root at all
    with pytest.raises(RootError):
        unique_positive_root(Polynomial([1, 0, 1]))


def test_unique_positive_root_ignores_roots_at_zero():
    interval = unique_positive_root(Polynomial([0, 0, -2, 0, 1]), tol=TIGHT)
    assert abs(interval.to_float() - 2**0.5) < 1e-12


def test_isolate_smallest_positive_root_picks_smallest():
    # roots 1/3 and 1/2: (3x-1)(2x-1) = 6x^2 - 5x + 1
    interval = isolate_smallest_positive_root(Polynomial([1, -5, 6]), tol=TIGHT)
    assert abs(interval.to_float() - 1 / 3) < 1e-12
    assert isolate_smallest_positive_root(Polynomial([1, 0, 1]), tol=TIGHT) is None


def test_reciprocal_polynomial():
    assert reciprocal_polynomial(Polynomial([2, 0, -1, 1])) == Polynomial([1, -1, 0, 2])
    with pytest.raises(RootError):
        reciprocal_polynomial(Polynomial([0, 1]))


def test_named_polynomials_and_their_roots():
    assert golden_ratio_polynomial().integer_coeffs() == [-1, -1, 1]
    assert silver_ratio_polynomial().integer_coeffs() == [-1, -2, 1]
    assert plastic_number_polynomial().integer_coeffs() == [-1, -1, 0, 1]
    assert bs2_rate_polynomial().integer_coeffs() == [-2, 0, -1, 1]
    assert abs(unique_positive_root(golden_ratio_polynomial(), tol=TIGHT).to_float() - GOLDEN) < 1e-12
    assert abs(unique_positive_root(silver_ratio_polynomial(), tol=TIGHT).to_float() - SILVER) < 1e-12
    assert abs(unique_positive_root(plastic_number_polynomial(), tol=TIGHT).to_float() - 1.3247179572447460) < 1e-12
    assert abs(unique_positive_root(bs2_rate_polynomial(), tol=TIGHT).to_float() - 1.6956207695598620) < 1e-12


def test_family_polynomial_shapes():
    assert growth_rate_polynomial(1).integer_coeffs() == [-2, -1, 1]
    assert growth_rate_polynomial(3).integer_coeffs() == [-2, -2, -2, -1, 1]
    assert lamplighter_pole_polynomial(1).integer_coeffs() == [1, -1, -2]
    assert lamplighter_pole_polynomial(2).integer_coeffs() == [1, -1, -2, -2]
    assert equal_length_bound_polynomial(1).integer_coeffs() == [-2, 0, -2, 1]
    assert equal_length_bound_polynomial(2).integer_coeffs() == [-2, 0, -2, 0, -2, 1]
    for bad in (growth_rate_polynomial, lamplighter_pole_polynomial, equal_length_bound_polynomial):
        with pytest.raises(RootError):
            bad(0)


def test_growth_rate_polynomial_k1_has_root_two():
    interval = unique_positive_root(growth_rate_polynomial(1))
    assert interval.is_exact() and interval.lo == 2


def test_free_monoid_bound_polynomial():
    assert free_monoid_bound_polynomial([1, 3, 3]) == bs2_rate_polynomial()
    assert free_monoid_bound_polynomial([1, 2, 2]) == growth_rate_polynomial(1)
    # always exactly one sign variation, whatever the multiset
    for lengths in ([1], [2, 2, 2], [1, 1, 4, 6, 6], [3, 5, 5, 5, 7]):
        assert sign_variations(free_monoid_bound_polynomial(lengths)) == 1
    with pytest.raises(RootError):
        free_monoid_bound_polynomial([])
    with pytest.raises(RootError):
        free_monoid_bound_polynomial([0, 2])


def test_rate_reciprocal_matches_pole_polynomial():
    # root of the rate polynomial and root of the pole polynomial multiply to 1
    for k in (1, 2, 3):
        rate = unique_positive_root(growth_rate_polynomial(k), tol=TIGHT)
        pole = isolate_smallest_positive_root(lamplighter_pole_polynomial(k), tol=TIGHT)
        assert abs(rate.to_float() * pole.to_float() - 1.0) < 1e-10


def test_certified_comparisons():
    golden = unique_positive_root(golden_ratio_polynomial())
    silver = unique_positive_root(silver_ratio_polynomial())
    assert certify_less_equal(golden, silver)
    assert not certify_less_equal(silver, golden)
    exact2 = unique_positive_root(growth_rate_polynomial(1))
    assert certify_less_equal(exact2, exact2)
    assert distance_upper_bound(golden, silver) >= Fraction(7, 10)


def test_interval_refine_and_json():
    interval = unique_positive_root(silver_ratio_polynomial(), tol=Fraction(1, 100))
    finer = interval.refine(Fraction(1, 10**12))
    assert finer.width <= Fraction(1, 10**12)
    assert finer.lo >= interval.lo and finer.hi <= interval.hi
    blob = finer.to_json()
    assert blob["polynomial"] == [-1, -2, 1]
    assert blob["exact"] is False
    assert blob["decimal"].startswith("2.4142135623")


def test_inequality_chain_small_depth():
    report = verify_inequality_chain(8)
    assert all(link.holds for link in report.links)
    assert len(report.links) == 8
    # convergence to the silver ratio is not yet reached this early
    assert not report.converged
    assert report.links[0].rate.is_exact() and report.links[0].rate.lo == 2
    # rates strictly increase
    floats = [link.rate.to_float() for link in report.links]
    assert floats == sorted(floats) and floats[0] < floats[-1]


def test_identity_suite_all_hold():
    checks = identity_suite()
    assert [c.name for c in checks] == [
        "equal-length-bound-compact-form",
        "bound-minus-rate-factorization",
        "pole-poly-times-1-minus-x",
        "five-word-certificate-factorization",
        "four-word-certificate-factorization",
        "bs2-numerator-coprime-to-pole",
    ]
    assert all(c.holds for c in checks)
