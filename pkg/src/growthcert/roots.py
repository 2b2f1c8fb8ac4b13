"""Certified real-root intervals for the rate polynomials.

Everything here is exact: intervals carry Fraction endpoints, sign conditions
are decided over Z/Q, and no float ever enters a certification path (floats
appear only in rendering).  Two isolation routines are provided:

* ``unique_positive_root`` -- for polynomials with exactly one coefficient sign
  change (Descartes: exactly one positive root).  This is checked as a hard
  precondition.  A rational-candidate pre-pass makes integer/rational roots
  come out exact (degenerate intervals), e.g. the shared rate 2 of bs:3 and
  lamplighter:3.
* ``isolate_smallest_positive_root`` -- Descartes-variation interval
  subdivision on a square-free polynomial; used for series denominators, which
  may carry several positive roots (including squared factors above the pole).

Polynomial families (coefficient vectors spelled out in the functions):

* ``growth_rate_polynomial(k)``       -- x^(k+1) - x^k - 2(x^(k-1)+...+1); its
  positive root is the shared growth rate of bs:(2k+1) and lamplighter:(2k+1).
* ``lamplighter_pole_polynomial(k)``  -- 1 - x - 2(x^2+...+x^(k+1)), the
  denominator factor 1 - x*f of the lamplighter series; reciprocal of the rate.
* ``equal_length_bound_polynomial(k)`` -- x^(2k+1) - 2x^2k - 2(x^(2k-2)+...+1),
  the bound family for two equal-translation hyperbolic generators.
* ``free_monoid_bound_polynomial(lengths)`` -- z^m - sum z^(m - l_i); when r
  words of lengths l_i generate a free monoid, the growth rate is at least its
  unique positive root.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .series import ONE, Polynomial, X, squarefree_part, poly_gcd


class RootError(ValueError):
    pass


# -- intervals -----------------------------------------------------------------


def _decimal_str(value: Fraction, digits: int) -> str:
    sign = "-" if value < 0 else ""
    value = abs(value)
    scaled = value * 10**digits
    whole = scaled.numerator // scaled.denominator
    text = str(whole).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}" if digits else f"{sign}{text}"


@dataclass(frozen=True)
class RootInterval:
    """[lo, hi] bracketing one real root of ``poly`` with certified signs.

    Either lo == hi and poly(lo) == 0 exactly, or poly(lo) and poly(hi) have
    strictly opposite signs.
    """

    poly: Polynomial
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def verify(self) -> bool:
        """Re-evaluate the defining sign conditions from scratch."""
        if self.lo == self.hi:
            return self.poly.evaluate(self.lo) == 0
        a, b = self.poly.evaluate(self.lo), self.poly.evaluate(self.hi)
        return self.lo < self.hi and a != 0 and b != 0 and (a < 0) != (b < 0)

    def refine(self, tol: Fraction) -> "RootInterval":
        """Bisect down to width <= tol (exact midpoint hits collapse)."""
        tol = Fraction(tol)
        lo, hi = self.lo, self.hi
        if lo == hi:
            return self
        neg_lo = self.poly.evaluate(lo) < 0
        while hi - lo > tol:
            mid = (lo + hi) / 2
            val = self.poly.evaluate(mid)
            if val == 0:
                return RootInterval(self.poly, mid, mid)
            if (val < 0) == neg_lo:
                lo = mid
            else:
                hi = mid
        return RootInterval(self.poly, lo, hi)

    def to_float(self) -> float:
        return float(self.midpoint)

    def decimal(self, digits: int = 15) -> str:
        return _decimal_str(self.midpoint, digits)

    def to_json(self) -> dict:
        return {
            "polynomial": self.poly.primitive().integer_coeffs(),
            "lower": f"{self.lo.numerator}/{self.lo.denominator}",
            "upper": f"{self.hi.numerator}/{self.hi.denominator}",
            "decimal": self.decimal(15),
            "width": float(self.width),
            "exact": self.is_exact(),
        }


# -- Descartes machinery ---------------------------------------------------------


def sign_variations(poly: Polynomial) -> int:
    """Sign changes in the coefficient sequence, zeros skipped."""
    count = 0
    prev = 0
    for c in poly.coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _strip_zero_roots(poly: Polynomial) -> Polynomial:
    coeffs = list(poly.coeffs)
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    return Polynomial(coeffs)


def _taylor_shift(poly: Polynomial, c: Fraction) -> Polynomial:
    """poly(x + c) by repeated synthetic division by (x - c)."""
    coeffs = list(poly.coeffs)
    out = []
    while coeffs:
        quot = [Fraction(0)] * (len(coeffs) - 1)
        acc = Fraction(0)
        for i in range(len(coeffs) - 1, 0, -1):
            acc = acc * c + coeffs[i]
            quot[i - 1] = acc
        out.append(acc * c + coeffs[0] if len(coeffs) > 1 else coeffs[0])
        coeffs = quot
    return Polynomial(out)


def _variation_bound_on_interval(poly: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Descartes bound for the number of roots in the open interval (lo, hi).

    0 certifies no root; 1 certifies exactly one (simple) root.
    """
    width = hi - lo
    shifted = _taylor_shift(poly, lo)  # roots of interest now in (0, width)
    scaled = Polynomial([c * width**i for i, c in enumerate(shifted.coeffs)])  # -> (0, 1)
    reversed_ = Polynomial(tuple(reversed(scaled.coeffs)))  # x^n q(1/x), roots -> (1, inf)
    moebius = _taylor_shift(reversed_, Fraction(1))  # roots -> (0, inf)
    return sign_variations(moebius)


def isolate_smallest_positive_root(
    poly: Polynomial, tol: Fraction = Fraction(1, 10**12), bound: Fraction = Fraction(1)
) -> Optional[RootInterval]:
    """Certified interval around the smallest root of ``poly`` in (0, bound].

    Returns None when there is no such root.  Subdivision explores left
    subintervals first, so the first isolated root is the smallest; Descartes
    counts of 0 certify discarded intervals are root-free.
    """
    tol = Fraction(tol)
    bound = Fraction(bound)
    if poly.is_zero():
        raise RootError("zero polynomial")
    work = squarefree_part(_strip_zero_roots(poly))
    if work.degree < 1:
        return None
    report = work  # intervals are reported against the full square-free part

    at_bound = report.evaluate(bound) == 0
    if at_bound:
        work, _ = work.divmod(X - Polynomial([bound]))

    def search(p: Polynomial, lo: Fraction, hi: Fraction) -> Optional[Tuple[Fraction, Fraction]]:
        count = _variation_bound_on_interval(p, lo, hi)
        if count == 0:
            return None
        if count == 1:
            return (lo, hi)
        mid = (lo + hi) / 2
        if p.evaluate(mid) == 0:
            quot, _ = p.divmod(X - Polynomial([mid]))
            return search(quot, lo, mid) or (mid, mid)
        return search(p, lo, mid) or search(p, mid, hi)

    found = search(work, Fraction(0), bound)
    if found is None:
        return RootInterval(report, bound, bound) if at_bound else None
    lo, hi = found
    if lo == hi:
        return RootInterval(report, lo, hi)
    return RootInterval(report, lo, hi).refine(tol)


def _small_divisors(value: int, cap: int = 10**9) -> List[int]:
    value = abs(value)
    if value == 0 or value > cap:
        return []
    out = []
    d = 1
    while d * d <= value:
        if value % d == 0:
            out.append(d)
            if d != value // d:
                out.append(value // d)
        d += 1
    return sorted(out)


def unique_positive_root(poly: Polynomial, tol: Fraction = Fraction(1, 10**12)) -> RootInterval:
    """Certified interval around the unique positive root.

    Hard precondition (raises RootError otherwise): after removing roots at 0,
    the coefficient sequence has exactly one sign change, so Descartes' rule
    guarantees exactly one positive root.
    """
    tol = Fraction(tol)
    if poly.is_zero():
        raise RootError("zero polynomial")
    work = _strip_zero_roots(poly).primitive()
    variations = sign_variations(work)
    if variations != 1:
        raise RootError(
            f"expected exactly one coefficient sign change, found {variations}: {work}"
        )
    coeffs = work.integer_coeffs()
    # rational-candidate pre-pass so rational roots come out exact
    for q in _small_divisors(coeffs[-1]):
        for p in _small_divisors(coeffs[0]):
            candidate = Fraction(p, q)
            if work.evaluate(candidate) == 0:
                return RootInterval(work, candidate, candidate)
    lead = abs(coeffs[-1])
    cauchy = 1 + max(abs(c) for c in coeffs[:-1]) / Fraction(lead)
    assert work.evaluate(0) != 0 and (work.evaluate(0) < 0) != (work.evaluate(cauchy) < 0)
    return RootInterval(work, Fraction(0), cauchy).refine(tol)


def reciprocal_polynomial(poly: Polynomial) -> Polynomial:
    """x^deg * poly(1/x): the coefficient sequence reversed.  Needs poly(0) != 0."""
    if poly.is_zero() or poly.coeffs[0] == 0:
        raise RootError("reciprocal needs a nonzero constant term")
    return Polynomial(tuple(reversed(poly.coeffs)))


# -- polynomial families -----------------------------------------------------------


def growth_rate_polynomial(k: int) -> Polynomial:
    """x^(k+1) - x^k - 2x^(k-1) - ... - 2x - 2 (k >= 1).

    Its unique positive root is the growth rate of bs:(2k+1) and
    lamplighter:(2k+1) on {a, t}; it is also the free-monoid bound polynomial
    of the length multiset [1, 2, 2, ..., k+1, k+1].
    """
    if k < 1:
        raise RootError("k >= 1 required")
    return Polynomial([-2] * k + [-1, 1])


def lamplighter_pole_polynomial(k: int) -> Polynomial:
    """1 - x - 2x^2 - ... - 2x^(k+1) (k >= 1): equals 1 - x*f for the cyclic
    series f of Z/(2k+1); its smallest positive root is the reciprocal rate."""
    if k < 1:
        raise RootError("k >= 1 required")
    return Polynomial([1, -1] + [-2] * k)


def equal_length_bound_polynomial(k: int) -> Polynomial:
    """x^(2k+1) - 2x^(2k) - 2x^(2k-2) - ... - 2x^2 - 2 (k >= 1)."""
    if k < 1:
        raise RootError("k >= 1 required")
    coeffs = [Fraction(0)] * (2 * k + 2)
    coeffs[2 * k + 1] = Fraction(1)
    coeffs[2 * k] = Fraction(-2)
    for m in range(0, 2 * k - 1, 2):
        coeffs[m] = Fraction(-2)
    return Polynomial(coeffs)


def free_monoid_bound_polynomial(lengths: Sequence[int]) -> Polynomial:
    """z^m - sum_i z^(m - l_i) for word lengths l_i (m = max length).

    If words w_1..w_r of S-lengths l_i generate a free monoid then the growth
    rate of (G, S) is at least the unique positive root.  Longer l_i only lower
    the root, so spelled lengths (upper bounds) keep the bound valid.
    """
    lens = list(lengths)
    if not lens or any((not isinstance(l, int)) or l < 1 for l in lens):
        raise RootError("lengths must be positive integers")
    m = max(lens)
    coeffs = [Fraction(0)] * (m + 1)
    coeffs[m] = Fraction(1)
    for l in lens:
        coeffs[m - l] -= 1
    return Polynomial(coeffs)


def golden_ratio_polynomial() -> Polynomial:
    return Polynomial([-1, -1, 1])  # x^2 - x - 1


def silver_ratio_polynomial() -> Polynomial:
    return Polynomial([-1, -2, 1])  # x^2 - 2x - 1, root 1 + sqrt(2)


def plastic_number_polynomial() -> Polynomial:
    return Polynomial([-1, -1, 0, 1])  # x^3 - x - 1


def bs2_rate_polynomial() -> Polynomial:
    return Polynomial([-2, 0, -1, 1])  # z^3 - z^2 - 2, the bs:2 growth rate


# -- certified comparisons -----------------------------------------------------------


class ChainUndecided(RuntimeError):
    pass


def certify_less_equal(a: RootInterval, b: RootInterval, max_refines: int = 400) -> bool:
    """Certified root(a) <= root(b); False certifies root(b) < root(a).

    Refines both intervals until they separate.  Raises ChainUndecided for
    coinciding non-degenerate roots (never the case for distinct family roots).
    """
    if a.is_exact() and b.is_exact():
        return a.lo <= b.lo
    for _ in range(max_refines):
        if a.hi <= b.lo:
            return True
        if b.hi < a.lo:
            return False
        a = a.refine(a.width / 4) if not a.is_exact() else a
        b = b.refine(b.width / 4) if not b.is_exact() else b
        if a.is_exact() and b.is_exact():
            return a.lo <= b.lo
    raise ChainUndecided("intervals failed to separate")


def distance_upper_bound(a: RootInterval, b: RootInterval) -> Fraction:
    """An upper bound for |root(a) - root(b)|."""
    return max(a.hi, b.hi) - min(a.lo, b.lo)


@dataclass
class ChainLink:
    k: int
    rate: RootInterval
    bound: RootInterval
    golden_le_rate: bool
    rate_le_bound: bool
    bound_lt_silver: bool
    rate_monotone: Optional[bool] = None

    @property
    def holds(self) -> bool:
        mono = True if self.rate_monotone is None else self.rate_monotone
        return self.golden_le_rate and self.rate_le_bound and self.bound_lt_silver and mono


@dataclass
class ChainReport:
    k_max: int
    links: List[ChainLink]
    convergence_gap: Fraction
    convergence_tol: Fraction

    @property
    def holds(self) -> bool:
        return all(link.holds for link in self.links) and self.converged

    @property
    def converged(self) -> bool:
        return self.convergence_gap < self.convergence_tol

    def summary(self) -> str:
        state = "holds" if self.holds else "FAILS"
        return (
            f"golden <= rate_k <= bound_k < silver {state} for k <= {self.k_max}; "
            f"|rate_{self.k_max} - silver| <= {float(self.convergence_gap):.3e}"
        )


def verify_inequality_chain(
    k_max: int,
    convergence_tol: Fraction = Fraction(1, 10**9),
    tol: Fraction = Fraction(1, 10**12),
) -> ChainReport:
    """Certify golden <= rate_k <= bound_k < silver for k = 1..k_max, that the
    rates increase in k, and that rate_{k_max} sits within convergence_tol of
    the silver ratio."""
    convergence_tol = Fraction(convergence_tol)
    golden = unique_positive_root(golden_ratio_polynomial(), tol)
    silver = unique_positive_root(silver_ratio_polynomial(), tol)
    links: List[ChainLink] = []
    previous_rate: Optional[RootInterval] = None
    for k in range(1, k_max + 1):
        rate = unique_positive_root(growth_rate_polynomial(k), tol)
        bound = unique_positive_root(equal_length_bound_polynomial(k), tol)
        link = ChainLink(
            k=k,
            rate=rate,
            bound=bound,
            golden_le_rate=certify_less_equal(golden, rate),
            rate_le_bound=certify_less_equal(rate, bound),
            bound_lt_silver=certify_less_equal(bound, silver),
            rate_monotone=None if previous_rate is None else certify_less_equal(previous_rate, rate),
        )
        links.append(link)
        previous_rate = rate
    last = links[-1].rate.refine(convergence_tol / 4)
    silver_fine = silver.refine(convergence_tol / 4)
    gap = distance_upper_bound(last, silver_fine)
    return ChainReport(k_max=k_max, links=links, convergence_gap=gap, convergence_tol=convergence_tol)


# -- exact identity suite --------------------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    holds: bool
    note: str = ""


def identity_suite(k_max: int = 20) -> List[IdentityCheck]:
    """Exact polynomial identities tying the families together.

    Every check is a structural equality of integer polynomials (or a gcd
    computation); nothing is numeric.
    """
    x = X
    one = ONE
    checks: List[IdentityCheck] = []

    ok = all(
        (x**2 - one) * equal_length_bound_polynomial(k)
        == x ** (2 * k + 3) - 2 * x ** (2 * k + 2) - x ** (2 * k + 1) + 2 * one
        for k in range(1, k_max + 1)
    )
    checks.append(
        IdentityCheck(
            "equal-length-bound-compact-form",
            ok,
            f"(x^2-1)*bound_k == x^(2k+3) - 2x^(2k+2) - x^(2k+1) + 2 for k <= {k_max}",
        )
    )

    ok = all(
        (x**2 - one) * equal_length_bound_polynomial(k)
        - (x**2 - one) * growth_rate_polynomial(k)
        == (x**k - one) * (x ** (k + 1) - one) * (x**2 - 2 * x - one) - (x**2 - one)
        for k in range(1, k_max + 1)
    )
    checks.append(
        IdentityCheck(
            "bound-minus-rate-factorization",
            ok,
            "difference of the (x^2-1)-scaled families factors through x^2-2x-1",
        )
    )

    ok = all(
        (one - x) * lamplighter_pole_polynomial(k)
        == one - 2 * x - x**2 + 2 * x ** (k + 2)
        for k in range(1, k_max + 1)
    )
    checks.append(
        IdentityCheck(
            "pole-poly-times-1-minus-x",
            ok,
            f"(1-x)*pole_k == 1 - 2x - x^2 + 2x^(k+2) for k <= {k_max}",
        )
    )

    five = free_monoid_bound_polynomial([1, 1, 3, 4, 4, 4, 5])
    ok = five == silver_ratio_polynomial() * (x**3 + x + one)
    checks.append(
        IdentityCheck(
            "five-word-certificate-factorization",
            ok,
            "z^5-2z^4-z^2-3z-1 == (z^2-2z-1)(z^3+z+1); positive root is the silver ratio",
        )
    )

    four = free_monoid_bound_polynomial([1, 1, 3, 3, 4])
    ok = four == silver_ratio_polynomial() * (x**2 + one)
    checks.append(
        IdentityCheck(
            "four-word-certificate-factorization",
            ok,
            "z^4-2z^3-2z-1 == (z^2+1)(z^2-2z-1), degree-corrected form",
        )
    )

    h = Polynomial([1, 3, 8, 12, 16, 20, 22, 16, 14, 12, 4])
    g = poly_gcd(h, Polynomial([1, -1, 0, -2]))
    checks.append(
        IdentityCheck(
            "bs2-numerator-coprime-to-pole",
            g == ONE,
            "gcd(degree-10 numerator factor, 1 - x - 2x^3) == 1",
        )
    )
    return checks
