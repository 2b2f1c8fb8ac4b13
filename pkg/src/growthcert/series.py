"""Exact polynomials, rational generating functions and the closed-form series.

Spherical convention throughout: the coefficient of x^m is the number of
elements of word length exactly m (not the ball size).  All coefficient
arithmetic is over Fraction; canonical rational functions clear denominators to
coprime integer polynomials with content 1 and positive constant term below.

Closed forms provided:

* ``cyclic_growth_series(n)``   -- Z/n with one generator.
* ``parry_wreath(f)``           -- Parry's growth series formula for G wr Z
                                   from the series f of G.
* ``bs_growth_series(n)``       -- BS(1,n) on {a,t}, for n = 2 and odd n >= 3
                                   (Collins-Edjvet-Gill closed forms).
* ``wreath_zz_series()``        -- Z wr Z on {a,t}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple, Union


class SeriesError(ValueError):
    pass


def _as_fraction_tuple(coeffs) -> Tuple[Fraction, ...]:
    vals = [Fraction(c) for c in coeffs]
    while vals and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


class Polynomial:
    """Dense polynomial, coefficients lowest degree first, exact arithmetic."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        self.coeffs = _as_fraction_tuple(coeffs)

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, m: int) -> Fraction:
        if 0 <= m < len(self.coeffs):
            return self.coeffs[m]
        return Fraction(0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[m] + other[m] for m in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci:
                for j, cj in enumerate(other.coeffs):
                    out[i + j] += ci * cj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, m: int):
        if m < 0:
            raise SeriesError("negative polynomial power")
        acc = Polynomial([1])
        square = self
        while m:
            if m & 1:
                acc = acc * square
            square = square * square
            m >>= 1
        return acc

    def divmod(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        den = other.coeffs
        lead = den[-1]
        quot = [Fraction(0)] * max(len(rem) - len(den) + 1, 0)
        for i in range(len(rem) - len(den), -1, -1):
            factor = rem[i + len(den) - 1] / lead
            if factor:
                quot[i] = factor
                for j, dj in enumerate(den):
                    rem[i + j] -= factor * dj
        return Polynomial(quot), Polynomial(rem)

    def evaluate(self, x: Union[int, Fraction]) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([m * c for m, c in enumerate(self.coeffs)][1:])

    # -- normalization --------------------------------------------------------

    def primitive(self) -> "Polynomial":
        """Integer coefficients with content 1, leading coefficient positive."""
        if self.is_zero():
            return Polynomial()
        denom = 1
        for c in self.coeffs:
            denom = lcm(denom, c.denominator)
        ints = [int(c * denom) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return Polynomial(ints)

    def integer_coeffs(self) -> List[int]:
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise SeriesError(f"non-integer coefficient {c}")
            out.append(c.numerator)
        return out

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for m, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if m == 0:
                parts.append(str(c))
                continue
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            term = f"{mag}x" if m == 1 else f"{mag}x^{m}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


X = Polynomial([0, 1])
ONE = Polynomial([1])


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Euclidean gcd, returned primitive with positive leading coefficient."""
    a, b = f, g
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return Polynomial()
    return a.primitive()


def squarefree_part(f: Polynomial) -> Polynomial:
    """f with root multiplicities flattened to 1 (f / gcd(f, f'))."""
    if f.is_zero() or f.degree == 0:
        return f.primitive() if not f.is_zero() else f
    g = poly_gcd(f, f.derivative())
    q, r = f.divmod(g)
    if not r.is_zero():
        raise SeriesError("gcd did not divide its input")
    return q.primitive()


class RationalFn:
    """Quotient of integer polynomials, canonical: coprime, content 1,
    denominator nonzero at 0 with positive constant term."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Polynomial([1])):
        if isinstance(num, (int, Fraction)):
            num = Polynomial([num])
        if isinstance(den, (int, Fraction)):
            den = Polynomial([den])
        if den.is_zero():
            raise SeriesError("zero denominator")
        if num.is_zero():
            self.num, self.den = Polynomial(), Polynomial([1])
            return
        g = poly_gcd(num, den)
        num, rn = num.divmod(g)
        den, rd = den.divmod(g)
        assert rn.is_zero() and rd.is_zero()
        # primitive() rescales by a positive rational but may negate to fix the
        # leading sign; track both negations so the quotient's value survives
        num_p, den_p = num.primitive(), den.primitive()
        flipped = ((num.coeffs[-1] < 0) != (num_p.coeffs[-1] < 0)) != (
            (den.coeffs[-1] < 0) != (den_p.coeffs[-1] < 0)
        )
        num, den = (-num_p if flipped else num_p), den_p
        if den.evaluate(0) == 0:
            raise SeriesError("denominator vanishes at 0; no power series expansion")
        if den.evaluate(0) < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFn(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFn(other)
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFn(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFn(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFn(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __repr__(self):
        return f"({self.num}) / ({self.den})"


def taylor_coefficients(f: Union[RationalFn, Polynomial], count: int) -> List[Fraction]:
    """First ``count`` power series coefficients of f at 0 (exact)."""
    if isinstance(f, Polynomial):
        return [f[m] for m in range(count)]
    num, den = f.num, f.den
    d0 = den[0]
    out: List[Fraction] = []
    for m in range(count):
        acc = num[m]
        for i in range(1, min(m, den.degree) + 1):
            acc -= den[i] * out[m - i]
        out.append(acc / d0)
    return out


# -- closed forms -------------------------------------------------------------


def cyclic_growth_series(n: int) -> Polynomial:
    """Growth polynomial of Z/n with one generator: spheres 1, 2, 2, ..."""
    if n < 2:
        raise SeriesError("cyclic group order must be >= 2")
    k, odd = divmod(n, 2)
    if odd:
        return Polynomial([1] + [2] * k)
    return Polynomial([1] + [2] * (k - 1) + [1])


def parry_wreath(f: Union[Polynomial, RationalFn]) -> RationalFn:
    """Growth series of G wr Z on S union {t} from the series f of (G, S).

    Parry's formula: f * (1-x^2)^2 * (1 + x f) / ((1 - x^2 f)^2 * (1 - x f)).
    """
    if isinstance(f, Polynomial):
        f = RationalFn(f)
    x = RationalFn(X)
    one = RationalFn(ONE)
    num = f * (one - x * x) * (one - x * x) * (one + x * f)
    den = (one - x * x * f) * (one - x * x * f) * (one - x * f)
    return num / den


def bs_growth_series(n: int) -> RationalFn:
    """Growth series of BS(1,n) on {a,t} for n = 2 or odd n >= 3."""
    x = X
    one = ONE
    if n == 2:
        h = Polynomial([1, 3, 8, 12, 16, 20, 22, 16, 14, 12, 4])
        num = (one - x) ** 2 * (one + x) ** 2 * h
        den = (one - x - 2 * x**3) * (one - x**2 - 2 * x**5) ** 2
        return RationalFn(num, den)
    if n < 3 or n % 2 == 0:
        raise SeriesError("closed form available for n = 2 and odd n >= 3 only")
    k = (n - 1) // 2
    num = (one + x**2 - 2 * x ** (k + 2)) * (one + x - 2 * x ** (k + 2)) * (one + x) ** 2 * (one - x) ** 3
    den = (one - x - x**2 - x**3 + 2 * x ** (k + 3)) ** 2 * (one - 2 * x - x**2 + 2 * x ** (k + 2))
    return RationalFn(num, den)


def wreath_zz_series() -> RationalFn:
    """Growth series of Z wr Z on {a,t}."""
    x = X
    one = ONE
    num = (one - x**2) ** 3 * (one + x**2)
    den = (one - x - x**2 - x**3) ** 2 * (one - 2 * x - x**2)
    return RationalFn(num, den)


def lamplighter_growth_series(p: int) -> RationalFn:
    """Growth series of (Z/p) wr Z on {a,t}: Parry applied to the cyclic series."""
    return parry_wreath(cyclic_growth_series(p))


# -- poles --------------------------------------------------------------------


def smallest_positive_pole(f: RationalFn, tol: Fraction = Fraction(1, 10**12),
                           bound: Fraction = Fraction(1)):
    """Certified interval around the smallest positive denominator root.

    Works on the square-free part of the canonical denominator, so squared
    factors with larger roots cannot hide the true pole.  Raises SeriesError
    when the denominator has no root in (0, bound].
    """
    from .roots import isolate_smallest_positive_root

    interval = isolate_smallest_positive_root(f.den, tol=tol, bound=Fraction(bound))
    if interval is None:
        raise SeriesError(f"denominator has no root in (0, {bound}]")
    return interval


# -- comparison against enumerated counts --------------------------------------


@dataclass
class ComparisonReport:
    group: str
    radius: int
    expected: List[int]
    observed: List[int]
    first_mismatch: Optional[int]
    matches: bool = field(init=False)

    def __post_init__(self):
        self.matches = self.first_mismatch is None

    def summary(self) -> str:
        if self.matches:
            return f"series matches spheres of {self.group} through radius {self.radius}"
        m = self.first_mismatch
        return (
            f"mismatch for {self.group} at radius {m}: "
            f"series {self.expected[m]} vs enumerated {self.observed[m]}"
        )


def compare_series_to_counts(f: Union[Polynomial, RationalFn], counts) -> ComparisonReport:
    """Exact coefficient-by-coefficient comparison with enumerated spheres."""
    observed = list(counts.spheres)
    coeffs = taylor_coefficients(f, len(observed))
    first = None
    for m, (want, got) in enumerate(zip(coeffs, observed)):
        if want != got:
            first = m
            break
    return ComparisonReport(
        group=counts.group,
        radius=counts.radius,
        expected=[int(c) if c.denominator == 1 else c for c in coeffs],
        observed=observed,
        first_mismatch=first,
    )
