"""Exact element arithmetic for the three supported group families.

Families (canonical generators a, t in each):

* ``bs:n``          -- BS(1,n) = <a, t | t a t^-1 = a^n>, n >= 2, in the affine
                       model: (k, b) is the map x |-> n^k x + b with b in Z[1/n];
                       t = (1, 0), a = (0, 1).
* ``lamplighter:p`` -- (Z/p) wr Z, p >= 2: pairs (lamps, shift) where lamps is a
                       finite map Z -> Z/p \\ {0}; a toggles the lamp at 0, t
                       shifts.
* ``wreathzz``      -- Z wr Z: same shape with integer lamp values.

All arithmetic is exact (int / Fraction); equality of elements is equality of
normal forms.  The exponent sum of t (``t_exponent``) is the homomorphism onto
Z that drives the Bass-Serre tree machinery in :mod:`growthcert.trees`.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple

Lamps = Tuple[Tuple[int, int], ...]  # sorted ((position, value), ...), values != 0


class GroupError(ValueError):
    """Unsupported family/parameter or an element fed to the wrong group."""


def _check_denominator_support(den: int, base: int) -> None:
    # b must lie in Z[1/base]: every prime of den divides base.
    d = den
    while d != 1:
        g = gcd(d, base)
        if g == 1:
            raise GroupError(f"denominator {den} is not supported on powers of {base}")
        while d % g == 0:
            d //= g


@dataclass(frozen=True)
class BsElement:
    """Affine normal form (k, b): the map x |-> base^k * x + b."""

    base: int
    k: int
    b: Fraction

    def __post_init__(self):
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))
        _check_denominator_support(self.b.denominator, self.base)

    def denominator_exponent(self) -> int:
        """Minimal e >= 0 with b * base^e integral (unique for every base)."""
        e = 0
        den = self.b.denominator
        power = 1
        while power % den != 0:
            power *= self.base
            e += 1
        return e


@dataclass(frozen=True)
class LampElement:
    """Lamplighter normal form (lamps, shift) with lamp values in 1..p-1."""

    modulus: int
    lamps: Lamps
    shift: int


@dataclass(frozen=True)
class WreathElement:
    """Z wr Z normal form (lamps, shift) with nonzero integer lamp values."""

    lamps: Lamps
    shift: int


def _merge_lamps(lamps: Lamps, other: Lamps, offset: int, modulus: Optional[int]) -> Lamps:
    acc = dict(lamps)
    for pos, val in other:
        q = pos + offset
        w = acc.get(q, 0) + val
        if modulus is not None:
            w %= modulus
        if w:
            acc[q] = w
        else:
            acc.pop(q, None)
    return tuple(sorted(acc.items()))


def _negate_lamps(lamps: Lamps, offset: int, modulus: Optional[int]) -> Lamps:
    out = []
    for pos, val in lamps:
        w = -val if modulus is None else (-val) % modulus
        out.append((pos + offset, w))
    return tuple(sorted(out))


class Group:
    """One group instance: family tag, parameter, canonical generators a and t."""

    def __init__(self, family: str, parameter: Optional[int] = None):
        if family == "bs":
            if parameter is None or parameter < 2:
                raise GroupError("bs requires a base n >= 2")
        elif family == "lamplighter":
            if parameter is None or parameter < 2:
                raise GroupError("lamplighter requires a modulus p >= 2")
        elif family == "wreathzz":
            if parameter is not None:
                raise GroupError("wreathzz takes no parameter")
        else:
            raise GroupError(f"unknown family {family!r}")
        self.family = family
        self.parameter = parameter

    def describe(self) -> str:
        if self.family == "wreathzz":
            return "wreathzz"
        return f"{self.family}:{self.parameter}"

    def __repr__(self):
        return f"Group({self.describe()!r})"

    def __eq__(self, other):
        return (
            isinstance(other, Group)
            and self.family == other.family
            and self.parameter == other.parameter
        )

    def __hash__(self):
        return hash((self.family, self.parameter))

    # -- canonical elements ------------------------------------------------

    @property
    def identity(self):
        if self.family == "bs":
            return BsElement(self.parameter, 0, Fraction(0))
        if self.family == "lamplighter":
            return LampElement(self.parameter, (), 0)
        return WreathElement((), 0)

    def generator(self, label: str):
        if label == "a":
            if self.family == "bs":
                return BsElement(self.parameter, 0, Fraction(1))
            if self.family == "lamplighter":
                if self.parameter == 1:
                    return self.identity
                return LampElement(self.parameter, ((0, 1),), 0)
            return WreathElement(((0, 1),), 0)
        if label == "t":
            if self.family == "bs":
                return BsElement(self.parameter, 1, Fraction(0))
            if self.family == "lamplighter":
                return LampElement(self.parameter, (), 1)
            return WreathElement((), 1)
        raise GroupError(f"unknown canonical generator {label!r}")

    # -- arithmetic --------------------------------------------------------

    def _own(self, g) -> None:
        if self.family == "bs":
            if not isinstance(g, BsElement) or g.base != self.parameter:
                raise GroupError(f"{g!r} is not an element of {self.describe()}")
        elif self.family == "lamplighter":
            if not isinstance(g, LampElement) or g.modulus != self.parameter:
                raise GroupError(f"{g!r} is not an element of {self.describe()}")
        else:
            if not isinstance(g, WreathElement):
                raise GroupError(f"{g!r} is not an element of {self.describe()}")

    def multiply(self, g, h):
        self._own(g)
        self._own(h)
        if self.family == "bs":
            n = self.parameter
            scale = Fraction(n) ** g.k
            return BsElement(n, g.k + h.k, scale * h.b + g.b)
        modulus = self.parameter if self.family == "lamplighter" else None
        lamps = _merge_lamps(g.lamps, h.lamps, g.shift, modulus)
        cls = LampElement if modulus is not None else WreathElement
        if modulus is not None:
            return cls(modulus, lamps, g.shift + h.shift)
        return cls(lamps, g.shift + h.shift)

    def invert(self, g):
        self._own(g)
        if self.family == "bs":
            n = self.parameter
            scale = Fraction(n) ** (-g.k)
            return BsElement(n, -g.k, -scale * g.b)
        modulus = self.parameter if self.family == "lamplighter" else None
        lamps = _negate_lamps(g.lamps, -g.shift, modulus)
        if modulus is not None:
            return LampElement(modulus, lamps, -g.shift)
        return WreathElement(lamps, -g.shift)

    def power(self, g, m: int):
        if m < 0:
            return self.power(self.invert(g), -m)
        acc = self.identity
        square = g
        while m:
            if m & 1:
                acc = self.multiply(acc, square)
            square = self.multiply(square, square)
            m >>= 1
        return acc

    def t_exponent(self, g) -> int:
        """Exponent sum of t (image of g under the homomorphism onto Z)."""
        self._own(g)
        return g.k if self.family == "bs" else g.shift


def parse_group(descriptor: str) -> Group:
    """Parse ``bs:3``, ``lamplighter:2`` or ``wreathzz``."""
    text = descriptor.strip()
    if text == "wreathzz":
        return Group("wreathzz")
    if ":" in text:
        family, _, param = text.partition(":")
        try:
            value = int(param)
        except ValueError:
            raise GroupError(f"bad group parameter in {descriptor!r}") from None
        return Group(family.strip(), value)
    raise GroupError(f"cannot parse group descriptor {descriptor!r}")


# -- words ------------------------------------------------------------------


def parse_word(text: str) -> Tuple[Tuple[str, int], ...]:
    """Split ``"a t^-1 t^3"`` into ((label, exponent), ...) pairs.

    Tokens are separated by whitespace or ``*``; each is a label optionally
    followed by ``^<integer>``.
    """
    out = []
    for token in text.replace("*", " ").split():
        label, _, exp = token.partition("^")
        if not label:
            raise GroupError(f"empty generator label in {text!r}")
        if exp:
            try:
                e = int(exp)
            except ValueError:
                raise GroupError(f"bad exponent in token {token!r}") from None
        else:
            e = 1
        out.append((label, e))
    return tuple(out)


def word_length(word: Tuple[Tuple[str, int], ...]) -> int:
    """Spelled length: the sum of |exponent| over the word's tokens."""
    return sum(abs(e) for _, e in word)


def element_from_word(group: Group, word, generators: Optional["GeneratorSet"] = None):
    """Evaluate a word left-to-right.  ``word`` is a string or (label, exp) pairs.

    Labels resolve through ``generators`` when given, else through the canonical
    a/t.  Unknown labels raise GroupError.
    """
    if isinstance(word, str):
        word = parse_word(word)
    acc = group.identity
    for label, exp in word:
        if generators is not None:
            base = generators.element(label)
        else:
            base = group.generator(label)
        acc = group.multiply(acc, group.power(base, exp))
    return acc


class GeneratorSet:
    """An ordered, labeled generating set; entries may be arbitrary words.

    Built either from the canonical pair (labels a, t) or from labeled words in
    the canonical generators, e.g. ``x=a t t``.  Word lengths measured against
    this set count its labels, not the spelled-out a/t words.
    """

    def __init__(self, group: Group, entries: Sequence[Tuple[str, str]] = (("a", "a"), ("t", "t"))):
        self.group = group
        self.entries = []
        seen_labels = set()
        for label, word_text in entries:
            if label in seen_labels:
                raise GroupError(f"duplicate generator label {label!r}")
            seen_labels.add(label)
            element = element_from_word(group, word_text)
            self.entries.append((label, word_text, element))
        if not self.entries:
            raise GroupError("empty generating set")

    @classmethod
    def canonical(cls, group: Group) -> "GeneratorSet":
        return cls(group)

    @classmethod
    def from_spec(cls, group: Group, spec: str) -> "GeneratorSet":
        """Parse ``"x=a t t, y=t"`` (comma-separated ``label=word`` entries)."""
        entries = []
        for chunk in spec.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            label, eq, word_text = chunk.partition("=")
            if not eq:
                raise GroupError(f"generator entry {chunk!r} lacks '='")
            entries.append((label.strip(), word_text.strip()))
        return cls(group, entries)

    def labels(self):
        return [label for label, _, _ in self.entries]

    def element(self, label: str):
        for lab, _, element in self.entries:
            if lab == label:
                return element
        raise GroupError(f"unknown generator label {label!r}")

    def closure(self):
        """Generators and their inverses, deduplicated by normal form."""
        out = []
        seen = set()
        for label, _, element in self.entries:
            for lab, g in ((label, element), (label + "^-1", self.group.invert(element))):
                if g not in seen:
                    seen.add(g)
                    out.append((lab, g))
        return out


# -- quotients ---------------------------------------------------------------


def quotient_map(g: WreathElement, target: Group):
    """Push a Z wr Z element down the natural quotient onto ``target``.

    Onto bs:n the lamp configuration f goes to b = sum f(x) * n^x; onto
    lamplighter:p the lamp values reduce mod p.  Both are homomorphisms.
    """
    if not isinstance(g, WreathElement):
        raise GroupError("quotient_map wants a wreathzz element")
    if target.family == "bs":
        n = target.parameter
        b = Fraction(0)
        for pos, val in g.lamps:
            b += val * Fraction(n) ** pos
        return BsElement(n, g.shift, b)
    if target.family == "lamplighter":
        p = target.parameter
        lamps = tuple((pos, val % p) for pos, val in g.lamps if val % p)
        return LampElement(p, lamps, g.shift)
    raise GroupError(f"no quotient onto {target.describe()}")


# -- canonical byte encoding -------------------------------------------------


def canonical_encode(g) -> bytes:
    """Deterministic byte encoding of the normal form (decodable)."""
    if isinstance(g, BsElement):
        payload = ("bs", g.base, g.k, g.b.numerator, g.b.denominator)
    elif isinstance(g, LampElement):
        payload = ("lamplighter", g.modulus, g.shift, g.lamps)
    elif isinstance(g, WreathElement):
        payload = ("wreathzz", g.shift, g.lamps)
    else:
        raise GroupError(f"cannot encode {g!r}")
    return repr(payload).encode("ascii")


def canonical_decode(blob: bytes):
    """Inverse of canonical_encode."""
    payload = ast.literal_eval(blob.decode("ascii"))
    tag = payload[0]
    if tag == "bs":
        _, base, k, num, den = payload
        return BsElement(base, k, Fraction(num, den))
    if tag == "lamplighter":
        _, modulus, shift, lamps = payload
        return LampElement(modulus, tuple(lamps), shift)
    if tag == "wreathzz":
        _, shift, lamps = payload
        return WreathElement(tuple(lamps), shift)
    raise GroupError(f"cannot decode tag {tag!r}")


def element_repr(g) -> str:
    """Short human-readable normal form used by the CLI."""
    if isinstance(g, BsElement):
        return f"(k={g.k}, b={g.b})"
    lamps = ",".join(f"{pos}:{val}" for pos, val in g.lamps) or "-"
    return f"(lamps={lamps}, shift={g.shift})"
