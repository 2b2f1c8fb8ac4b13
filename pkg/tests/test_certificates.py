"""Free-submonoid certificates: presets, frozen geometry, failure reasons."""

import json
from fractions import Fraction as F

import pytest

from growthcert.enumeration import free_monoid_distinctness
from growthcert.groups import GeneratorSet, element_from_word, parse_group
from growthcert.certificates import (
    CertificateError,
    PRESET_NAMES,
    certificate_from_words,
    preset_certificate,
)
from growthcert.trees import base_vertex

bs2 = parse_group("bs:2")
bs3 = parse_group("bs:3")
bs5 = parse_group("bs:5")
l2 = parse_group("lamplighter:2")
l5 = parse_group("lamplighter:5")

SILVER = 1 + 2**0.5


def residues(cert):
    return {(v.level, str(v.residue)) for v in cert.images}


def test_preset_names_are_stable():
    assert PRESET_NAMES == (
        "bs2",
        "double-translation",
        "elliptic",
        "equal-length",
        "intermediate-translation",
        "long-translation",
    )


def test_bs2_preset():
    cert = preset_certificate(bs2, "bs2")
    assert cert.verdict
    assert cert.elements == ("x", "z x^2", "z^-1 x^2")
    assert cert.lengths == (1, 3, 3)
    assert [v.level for v in cert.images] == [1, 2, 2]
    assert [str(v.residue) for v in cert.images] == ["0", "1", "3"]
    assert cert.bound_polynomial.integer_coeffs() == [-2, 0, -1, 1]
    assert abs(cert.bound.to_float() - 1.6956207695598620) < 1e-10


def test_elliptic_preset_across_parameters():
    for group, want_lengths, want_rate in (
        (bs3, [1, 2, 2], 2.0),
        (bs5, [1, 2, 2, 3, 3], 2.2695308420814),
        (l5, [1, 2, 2, 3, 3], 2.2695308420814),
        (parse_group("bs:7"), [1, 2, 2, 3, 3, 4, 4], 2.3593040859723),
    ):
        cert = preset_certificate(group, "elliptic")
        assert cert.verdict, cert.reason
        assert sorted(cert.lengths) == want_lengths
        assert abs(cert.bound.to_float() - want_rate) < 1e-10


def test_elliptic_preset_even_parameter():
    cert = preset_certificate(l2, "elliptic")
    assert cert.verdict
    assert sorted(cert.lengths) == [1, 2]
    assert abs(cert.bound.to_float() - 1.618033988749895) < 1e-12


def test_equal_length_preset_reports_family_bound_separately():
    cert = preset_certificate(bs5, "equal-length")
    assert cert.verdict
    assert sorted(cert.lengths) == [1, 1, 3, 3, 5]
    # spelled lengths give one bound; the sharper family polynomial rides along
    assert cert.family_polynomial.integer_coeffs() == [-2, 0, -2, 0, -2, 1]
    assert cert.family_bound is not None
    assert cert.bound.to_float() < cert.family_bound.to_float()
    assert cert.note


def test_long_translation_preset_frozen_images():
    cert = preset_certificate(bs5, "long-translation")
    assert cert.verdict
    assert sorted(cert.lengths) == [1, 2, 2, 3, 3]
    assert residues(cert) == {(1, "1"), (2, "5"), (3, "25"), (0, "1/5"), (-1, "1/25")}


def test_double_translation_preset_frozen_images():
    cert = preset_certificate(bs5, "double-translation")
    assert cert.verdict
    assert cert.lengths == (1, 1, 3, 4, 5, 4, 4)
    assert abs(cert.bound.to_float() - SILVER) < 1e-12
    assert residues(cert) == {(2, "1"), (1, "0"), (3, "6"), (2, "2"), (4, "31"), (1, "4"), (2, "21")}


def test_intermediate_translation_preset_frozen_images():
    cert = preset_certificate(bs5, "intermediate-translation")
    assert cert.verdict
    assert cert.lengths == (1, 1, 3, 4, 3)
    assert abs(cert.bound.to_float() - SILVER) < 1e-12
    assert residues(cert) == {(2, "1"), (1, "0"), (3, "6"), (1, "6/5"), (0, "4/5")}


def test_hyperbolic_pair_presets_on_lamplighter():
    for name in ("long-translation", "double-translation", "intermediate-translation"):
        cert = preset_certificate(l5, name)
        assert cert.verdict, f"{name}: {cert.reason}"


def test_certificates_are_sound_against_brute_force():
    # every passing certificate's elements really generate freely (to depth 5)
    plans = [
        (bs2, "bs2"),
        (bs3, "elliptic"),
        (bs5, "long-translation"),
        (bs5, "intermediate-translation"),
    ]
    for group, name in plans:
        cert = preset_certificate(group, name)
        assert cert.verdict
        gens = GeneratorSet(group, tuple(cert.generators))
        elements = [element_from_word(group, w, generators=gens) for w in cert.elements]
        report = free_monoid_distinctness(group, elements, depth=5)
        assert report.ok, report.summary()


def test_failure_coinciding_images():
    cert = certificate_from_words(bs3, ["t", "t"], base_vertex(bs3))
    assert not cert.verdict
    assert "coincide" in cert.reason
    assert "unfree" in cert.note
    assert cert.bound is None


def test_failure_elliptic_element():
    cert = certificate_from_words(bs3, ["a", "t"], base_vertex(bs3))
    assert not cert.verdict and "elliptic" in cert.reason


def test_failure_negative_hyperbolic():
    cert = certificate_from_words(bs3, ["t^-1"], base_vertex(bs3))
    assert not cert.verdict and "positive" in cert.reason


def test_failure_comparable_images():
    cert = certificate_from_words(bs2, ["t", "t^2"], base_vertex(bs2))
    assert not cert.verdict and "ascendant" in cert.reason


def test_failure_no_elements():
    cert = certificate_from_words(bs2, [], base_vertex(bs2))
    assert not cert.verdict and "no elements" in cert.reason


def test_preset_hypothesis_failure_is_a_fail_verdict():
    # x = a t^2 has translation length 2, not > 2 * tau(y): hypothesis breaks
    cert = preset_certificate(bs5, "long-translation", overrides={"x": "a t^2"})
    assert not cert.verdict
    assert "hypothesis failed" in cert.reason


def test_double_translation_fails_at_base_two():
    # at n = 2 two images collide or compare; the construction needs n >= 3
    cert = preset_certificate(bs2, "double-translation")
    assert not cert.verdict


def test_elliptic_preset_rejects_hyperbolic_witness():
    cert = preset_certificate(bs2, "elliptic", overrides={"z": "t"})
    assert not cert.verdict and "elliptic" in cert.reason


def test_unknown_preset_and_labels():
    with pytest.raises(CertificateError):
        preset_certificate(bs2, "nope")
    with pytest.raises(CertificateError):
        preset_certificate(bs2, "bs2", overrides={"q": "t"})


def test_custom_generators_certificate():
    group = bs5
    gens = GeneratorSet.from_spec(group, "x=a t^3, y=t")
    vertex = base_vertex(group)
    cert = certificate_from_words(group, ["x", "y x"], vertex, generators=gens)
    # lengths count the labeled alphabet, not the spelled-out canonical words
    assert cert.lengths == (1, 2)
    assert cert.generators == (("x", "a t^3"), ("y", "t"))


def test_certificate_json_round_trip():
    blob = json.loads(preset_certificate(bs2, "bs2").to_json())
    assert blob["verdict"] == "pass"
    assert blob["lengths"] == [1, 3, 3]
    assert blob["vertex"]["family"] == "bs"
    assert blob["generators"] == {"x": "t", "z": "a"}
    assert blob["bound"]["polynomial"] == [-2, 0, -1, 1]
    assert blob["bound"]["decimal"].startswith("1.69562076955")
    assert len(blob["images"]) == 3

    failing = json.loads(certificate_from_words(bs3, ["t", "t"], base_vertex(bs3)).to_json())
    assert failing["verdict"] == "fail"
    assert "bound" not in failing or failing["bound"] is None


def test_tolerance_controls_bound_width():
    cert = preset_certificate(bs2, "bs2", tol=F(1, 10**6))
    assert cert.bound.width <= F(1, 10**6)
    tight = preset_certificate(bs2, "bs2", tol=F(1, 10**14))
    assert tight.bound.width <= F(1, 10**14)
