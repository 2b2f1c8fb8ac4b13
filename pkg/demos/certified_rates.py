"""Certified growth rates: defining polynomials, root intervals, and the
squeeze between the golden and silver ratios.

Run: python3 demos/certified_rates.py
"""

from fractions import Fraction

from growthcert import (
    bs2_rate_polynomial,
    golden_ratio_polynomial,
    growth_rate_polynomial,
    identity_suite,
    silver_ratio_polynomial,
    unique_positive_root,
    verify_inequality_chain,
)


def show(name, poly):
    interval = unique_positive_root(poly, tol=Fraction(1, 10**12))
    tag = "exact" if interval.is_exact() else f"width {float(interval.width):.1e}"
    print(f"{name:>22}: root of {poly}  ->  {interval.decimal(12)}  ({tag})")


def main():
    show("lamplighter:2", golden_ratio_polynomial())
    show("bs:2", bs2_rate_polynomial())
    for p in (3, 5, 7, 9):
        show(f"bs:{p} = lamplighter:{p}", growth_rate_polynomial((p - 1) // 2))
    show("wreathzz", silver_ratio_polynomial())
    print()

    chain = verify_inequality_chain(50)
    print(chain.summary())
    print()

    for check in identity_suite():
        state = "ok " if check.holds else "BAD"
        print(f"  {state} {check.name}: {check.note}")


if __name__ == "__main__":
    main()
