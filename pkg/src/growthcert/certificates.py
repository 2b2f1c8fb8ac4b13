"""Free-submonoid certificates on the trees, with certified rate bounds.

A certificate names a vertex v and elements x_1..x_r and asserts the checked
hypotheses: every x_i is positive hyperbolic, every image x_i(v) is a strict
descendant of v, and the images are pairwise incomparable.  When all three
hold, the x_i freely generate a free monoid, and the spelled word lengths
l_1..l_r over the certificate's own alphabet give the certified lower bound

    rate >= unique positive root of  z^m - sum_i z^(m - l_i),  m = max l_i.

A failed check is a failed *certificate*, not a proof of unfreeness; failure
reports say which hypothesis broke and keep that caveat attached.

``preset_certificate`` builds the named constructions: one for an elliptic
and a hyperbolic witness, four for a pair of hyperbolic witnesses split by
the ratio of their translation lengths, and the sharper three-element variant
special to the 2-adic group.  Default witnesses are fixed words in a, t and
are validated against each preset's hypotheses at run time; a default that
fails its hypothesis is reported, never silently adjusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .groups import (
    GeneratorSet,
    Group,
    GroupError,
    element_from_word,
    parse_word,
    word_length,
)
from .roots import (
    RootInterval,
    equal_length_bound_polynomial,
    free_monoid_bound_polynomial,
    unique_positive_root,
)
from .series import Polynomial
from . import trees

DEFAULT_TOL = Fraction(1, 10**12)

UNFREE_NOTE = "a failed check does not certify that the monoid is unfree"


class CertificateError(ValueError):
    pass


@dataclass
class Certificate:
    group: str
    generators: Tuple[Tuple[str, str], ...]  # certificate alphabet: (label, word in a/t)
    elements: Tuple[str, ...]  # words over the certificate alphabet
    lengths: Tuple[int, ...]
    vertex: Optional[object]
    verdict: bool
    reason: str
    images: Tuple[object, ...] = ()
    bound: Optional[RootInterval] = None
    bound_polynomial: Optional[Polynomial] = None
    family_polynomial: Optional[Polynomial] = None
    family_bound: Optional[RootInterval] = None
    note: str = ""

    def summary(self) -> str:
        state = "PASS" if self.verdict else "FAIL"
        lines = [f"[{state}] certificate on {self.group}: {self.reason}"]
        gens = ", ".join(f"{label} = {word}" for label, word in self.generators)
        lines.append(f"  alphabet: {gens}")
        lines.append(f"  elements: {', '.join(self.elements)}")
        lines.append(f"  lengths:  {list(self.lengths)}")
        if self.vertex is not None:
            lines.append(f"  vertex:   {self.vertex}")
        if self.bound is not None:
            lines.append(f"  bound:    rate >= {self.bound.decimal(12)}"
                         f"  (root of {self.bound_polynomial})")
        if self.family_bound is not None:
            lines.append(f"  family:   {self.family_bound.decimal(12)}"
                         f"  (root of {self.family_polynomial})")
        if self.note:
            lines.append(f"  note:     {self.note}")
        return "\n".join(lines)

    def to_json(self) -> str:
        data = {
            "group": self.group,
            "generators": {label: word for label, word in self.generators},
            "elements": list(self.elements),
            "lengths": list(self.lengths),
            "vertex": self.vertex.to_json() if self.vertex is not None else None,
            "images": [v.to_json() for v in self.images],
            "verdict": "pass" if self.verdict else "fail",
            "reason": self.reason,
            "bound": self.bound.to_json() if self.bound is not None else None,
            "bound_polynomial": str(self.bound_polynomial)
            if self.bound_polynomial is not None else None,
        }
        if self.family_bound is not None:
            data["family_bound"] = self.family_bound.to_json()
            data["family_polynomial"] = str(self.family_polynomial)
        if self.note:
            data["note"] = self.note
        return json.dumps(data, indent=2)


def check_ping_pong(
    group: Group,
    elements: Sequence,
    vertex,
    lengths: Sequence[int],
    *,
    descriptor_extras: Optional[dict] = None,
    tol: Fraction = DEFAULT_TOL,
) -> Certificate:
    """Verify the three ping-pong hypotheses and attach the induced bound.

    ``elements`` are group elements, ``lengths`` their word lengths over
    whatever alphabet the caller certifies with.  Violated hypotheses become
    fail verdicts, never exceptions.  Bookkeeping fields (generator table,
    element words) are supplied by the callers below via descriptor_extras.
    """
    extras = descriptor_extras or {}
    base_kwargs = dict(
        group=group.describe(),
        generators=tuple(extras.get("generators", ())),
        elements=tuple(extras.get("elements", ())),
        lengths=tuple(lengths),
        vertex=vertex,
    )

    def fail(reason: str, images=()) -> Certificate:
        return Certificate(verdict=False, reason=reason, images=tuple(images),
                           note=UNFREE_NOTE, **base_kwargs)

    if not elements:
        return fail("no elements supplied")
    if len(lengths) != len(elements):
        raise CertificateError("one length per element required")

    names = list(base_kwargs["elements"]) or [f"#{i}" for i in range(len(elements))]
    for i, g in enumerate(elements):
        exponent = group.t_exponent(g)
        if exponent <= 0:
            kind = "elliptic" if exponent == 0 else "negative hyperbolic"
            return fail(f"element {names[i]} is {kind}, not positive hyperbolic")

    images = [trees.act_on_vertex(group, g, vertex) for g in elements]
    for i, img in enumerate(images):
        if not trees.is_strict_descendant(img, vertex):
            return fail(
                f"image of {names[i]} is not a strict descendant of the vertex",
                images,
            )
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if images[i] == images[j]:
                return fail(
                    f"images of {names[i]} and {names[j]} coincide", images
                )
            if trees.is_strict_descendant(images[j], images[i]):
                return fail(
                    f"image of {names[i]} is an ascendant of the image of {names[j]}",
                    images,
                )
            if trees.is_strict_descendant(images[i], images[j]):
                return fail(
                    f"image of {names[j]} is an ascendant of the image of {names[i]}",
                    images,
                )

    poly = free_monoid_bound_polynomial(lengths)
    bound = unique_positive_root(poly, tol=tol)
    return Certificate(
        verdict=True,
        reason="all hypotheses verified; the elements freely generate a free monoid",
        images=tuple(images),
        bound=bound,
        bound_polynomial=poly,
        **base_kwargs,
    )


# -- preset constructions ----------------------------------------------------------


def _signed_residues(p: int) -> List[int]:
    """Nonzero residues mod p as least-absolute-value representatives.

    Ordered positives first: [1, 2, ..ism] interleaved as 1, -1, 2, -2, ...;
    for even p the extremal residue p/2 appears once (its negative repeats it).
    """
    out: List[int] = []
    for j in range(1, p // 2 + 1):
        out.append(j)
        if not (p % 2 == 0 and 2 * j == p):
            out.append(-j)
    return out


def _power_word(label: str, exponent: int) -> str:
    if exponent == 1:
        return label
    return f"{label}^{exponent}"


class _Hypothesis(Exception):
    """A preset default failed one of its case hypotheses."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise _Hypothesis(message)


def _materialize(group: Group, gen_words: Dict[str, str]):
    try:
        gens = GeneratorSet(group, tuple(gen_words.items()))
    except GroupError as exc:
        raise CertificateError(str(exc)) from exc
    return gens


def _finish(
    group: Group,
    gen_words: Dict[str, str],
    element_words: List[str],
    vertex,
    tol: Fraction,
    family_polynomial: Optional[Polynomial] = None,
    note: str = "",
) -> Certificate:
    gens = _materialize(group, gen_words)
    elements = [element_from_word(group, w, generators=gens) for w in element_words]
    lengths = [word_length(parse_word(w)) for w in element_words]
    cert = check_ping_pong(
        group,
        elements,
        vertex,
        lengths,
        descriptor_extras={
            "generators": tuple(gen_words.items()),
            "elements": tuple(element_words),
        },
        tol=tol,
    )
    if family_polynomial is not None:
        cert.family_polynomial = family_polynomial
        cert.family_bound = unique_positive_root(family_polynomial, tol=tol)
    if note:
        cert.note = (cert.note + "; " + note) if cert.note else note
    return cert


def _failed_preset(group: Group, gen_words, element_words, reason: str) -> Certificate:
    return Certificate(
        group=group.describe(),
        generators=tuple(gen_words.items()),
        elements=tuple(element_words),
        lengths=tuple(word_length(parse_word(w)) for w in element_words),
        vertex=None,
        verdict=False,
        reason=reason,
        note=UNFREE_NOTE,
    )


def _classified(group: Group, gens: GeneratorSet, label: str):
    g = gens.element(label)
    return g, group.t_exponent(g)


def _preset_bs2(group: Group, gen_words: Dict[str, str], tol: Fraction) -> Certificate:
    gens = _materialize(group, gen_words)
    x, tau_x = _classified(group, gens, "x")
    z, tau_z = _classified(group, gens, "z")
    _require(tau_x > 0, f"x must be positive hyperbolic (t-exponent {tau_x})")
    _require(tau_z == 0, f"z must be elliptic (t-exponent {tau_z})")
    vertex = trees.lowest_fixed_vertex_on_axis(group, z, x)
    return _finish(group, gen_words, ["x", "z x^2", "z^-1 x^2"], vertex, tol)


def _preset_elliptic(group: Group, gen_words: Dict[str, str], tol: Fraction) -> Certificate:
    if group.parameter is None:
        raise CertificateError("this preset needs a group with a finite branching parameter")
    gens = _materialize(group, gen_words)
    x, tau_x = _classified(group, gens, "x")
    z, tau_z = _classified(group, gens, "z")
    _require(tau_x > 0, f"x must be positive hyperbolic (t-exponent {tau_x})")
    _require(tau_z == 0, f"z must be elliptic (t-exponent {tau_z})")
    vertex = trees.lowest_fixed_vertex_on_axis(group, z, x)
    words = ["x"] + [f"{_power_word('z', j)} x" for j in _signed_residues(group.parameter)]
    return _finish(group, gen_words, words, vertex, tol)


def _preset_equal_length(group: Group, gen_words: Dict[str, str], tol: Fraction) -> Certificate:
    if group.parameter is None:
        raise CertificateError("this preset needs a group with a finite branching parameter")
    gens = _materialize(group, gen_words)
    x, tau_x = _classified(group, gens, "x")
    y, tau_y = _classified(group, gens, "y")
    _require(tau_x > 0, f"x must be positive hyperbolic (t-exponent {tau_x})")
    _require(tau_y > 0, f"y must be positive hyperbolic (t-exponent {tau_y})")
    _require(tau_x == tau_y,
             f"translation lengths must be equal (got {tau_x} and {tau_y})")
    z = group.multiply(y, group.invert(x))
    _require(z != group.identity, "x and y must be distinct")
    # z = y x^-1 is elliptic; its lowest fixed axis vertex exists iff the axes differ
    vertex = trees.lowest_fixed_vertex_on_axis(group, z, x)
    k = (group.parameter - 1) // 2
    words = ["x", "y"]
    words += ["y x^-1 " * j + "y" for j in range(1, k)]
    words += ["x y^-1 " * j + "x" for j in range(1, k + 1)]
    note = ("the certified bound uses the spelled lengths; the family polynomial "
            "counts the longest word twice and its root is reported separately")
    return _finish(group, gen_words, words, vertex, tol,
                   family_polynomial=equal_length_bound_polynomial(k), note=note)


def _preset_long_translation(group: Group, gen_words: Dict[str, str], tol: Fraction) -> Certificate:
    gens = _materialize(group, gen_words)
    x, tau_x = _classified(group, gens, "x")
    y, tau_y = _classified(group, gens, "y")
    _require(tau_x > 0, f"x must be positive hyperbolic (t-exponent {tau_x})")
    _require(tau_y > 0, f"y must be positive hyperbolic (t-exponent {tau_y})")
    _require(tau_x > 2 * tau_y,
             f"this case needs translation lengths with tau(x) > 2 tau(y) "
             f"(got {tau_x} and {tau_y})")
    v0 = trees.lowest_common_axis_vertex(group, x, y)
    v_x = trees.axis_child(group, x, v0)
    vertex = trees.act_on_vertex(group, group.invert(x), v_x)
    p = group.parameter if group.parameter is not None else 2
    k = max(2, (p - 1) // 2)
    words = ["x"]
    words += [f"{_power_word('y', s)} x" for s in range(1, k + 1)]
    words += ["y^-1 x", "y^-2 x"]
    words += [f"{_power_word('y', s)} x^-1 y x" for s in range(1, k - 1)]
    return _finish(group, gen_words, words, vertex, tol)


def _preset_double_translation(group: Group, gen_words: Dict[str, str], tol: Fraction) -> Certificate:
    gens = _materialize(group, gen_words)
    x, tau_x = _classified(group, gens, "x")
    y, tau_y = _classified(group, gens, "y")
    _require(tau_x > 0, f"x must be positive hyperbolic (t-exponent {tau_x})")
    _require(tau_y > 0, f"y must be positive hyperbolic (t-exponent {tau_y})")
    _require(tau_x == 2 * tau_y,
             f"this case needs tau(x) = 2 tau(y) (got {tau_x} and {tau_y})")
    vertex = trees.lowest_common_axis_vertex(group, x, y)
    words = ["x", "y", "x y^-1 x", "x y^-2 x", "x y^-1 x y^-1 x",
             "y^2 x^-1 y", "x y x^-1 y"]
    return _finish(group, gen_words, words, vertex, tol)


def _preset_intermediate_translation(group: Group, gen_words: Dict[str, str], tol: Fraction) -> Certificate:
    gens = _materialize(group, gen_words)
    x, tau_x = _classified(group, gens, "x")
    y, tau_y = _classified(group, gens, "y")
    _require(tau_x > 0, f"x must be positive hyperbolic (t-exponent {tau_x})")
    _require(tau_y > 0, f"y must be positive hyperbolic (t-exponent {tau_y})")
    _require(tau_y < tau_x < 2 * tau_y,
             f"this case needs tau(y) < tau(x) < 2 tau(y) (got {tau_x} and {tau_y})")
    v0 = trees.lowest_common_axis_vertex(group, x, y)
    # the pivot vertex sits on both axes; which one depends on where tau(x)
    # falls between tau(y) and 2 tau(y)
    if 2 * tau_x <= 3 * tau_y:
        pivot = group.multiply(x, group.power(group.invert(y), 2))
    else:
        pivot = group.multiply(y, group.invert(x))
    vertex = trees.act_on_vertex(group, pivot, v0)
    words = ["x", "y", "x y^-1 x", "x y^-2 x", "y x^-1 y"]
    return _finish(group, gen_words, words, vertex, tol)


_PRESETS = {
    "bs2": (_preset_bs2, {"x": "t", "z": "a"}),
    "elliptic": (_preset_elliptic, {"x": "t", "z": "a"}),
    "equal-length": (_preset_equal_length, {"x": "a t", "y": "a^-1 t"}),
    "long-translation": (_preset_long_translation, {"x": "a t^3", "y": "t"}),
    "double-translation": (_preset_double_translation, {"x": "a t^2", "y": "t"}),
    "intermediate-translation": (_preset_intermediate_translation,
                                 {"x": "a t^3", "y": "t^2"}),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset_certificate(
    group: Group,
    name: str,
    *,
    tol: Fraction = DEFAULT_TOL,
    overrides: Optional[Dict[str, str]] = None,
) -> Certificate:
    """Build and check one of the named constructions on the given group.

    ``overrides`` replaces default witness words by label (e.g. {"x": "a t^5"});
    the preset's hypotheses are still validated and a violation yields a fail
    verdict naming the broken hypothesis.
    """
    try:
        builder, defaults = _PRESETS[name]
    except KeyError:
        raise CertificateError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None
    gen_words = dict(defaults)
    if overrides:
        unknown = set(overrides) - set(gen_words)
        if unknown:
            raise CertificateError(
                f"preset {name!r} has no witness labeled {', '.join(sorted(unknown))}"
            )
        gen_words.update(overrides)
    try:
        return builder(group, gen_words, tol)
    except _Hypothesis as exc:
        return _failed_preset(group, gen_words, [], f"hypothesis failed: {exc}")
    except (trees.TreeError, trees.TreeSearchExhausted) as exc:
        return _failed_preset(group, gen_words, [], f"hypothesis failed: {exc}")


def certificate_from_words(
    group: Group,
    element_words: Sequence[str],
    vertex,
    *,
    generators: Optional[GeneratorSet] = None,
    tol: Fraction = DEFAULT_TOL,
) -> Certificate:
    """Check user-supplied words at a vertex; lengths are spelled over the
    declared alphabet (canonical a, t when none is given)."""
    gens = generators if generators is not None else GeneratorSet.canonical(group)
    elements = [element_from_word(group, w, generators=gens) for w in element_words]
    lengths = [word_length(parse_word(w)) for w in element_words]
    return check_ping_pong(
        group,
        elements,
        vertex,
        lengths,
        descriptor_extras={
            "generators": tuple((lab, wt) for lab, wt, _ in gens.entries),
            "elements": tuple(element_words),
        },
        tol=tol,
    )
