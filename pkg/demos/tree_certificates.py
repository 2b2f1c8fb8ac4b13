"""Free-submonoid certificates on the coset trees.

Each preset picks elements and a vertex, verifies the ping-pong hypotheses,
and reports a certified lower bound for the growth rate.  A deliberately bad
certificate at the end shows what failure looks like.

Run: python3 demos/tree_certificates.py
"""

from growthcert import (
    base_vertex,
    certificate_from_words,
    parse_group,
    preset_certificate,
)

PLAN = [
    ("bs:2", "bs2"),
    ("bs:3", "elliptic"),
    ("bs:5", "elliptic"),
    ("bs:5", "equal-length"),
    ("bs:5", "long-translation"),
    ("bs:5", "double-translation"),
    ("bs:5", "intermediate-translation"),
    ("lamplighter:5", "elliptic"),
    ("lamplighter:5", "double-translation"),
]


def main():
    for descriptor, preset in PLAN:
        group = parse_group(descriptor)
        cert = preset_certificate(group, preset)
        print(f"--- {preset} on {descriptor} ---")
        print(cert.summary())
        print()

    print("--- a certificate that fails ---")
    bad = certificate_from_words(parse_group("bs:3"), ["t", "t"], base_vertex(parse_group("bs:3")))
    print(bad.summary())


if __name__ == "__main__":
    main()
