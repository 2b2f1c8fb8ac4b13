"""BFS enumeration: frozen counts, a slow independent oracle, caps, freeness."""

import itertools

import pytest

from growthcert.enumeration import (
    ResourceCapExceeded,
    SphereCounts,
    ball_elements,
    enumerate_for_descriptor,
    enumerate_spheres,
    estimate_rate,
    free_monoid_distinctness,
)
from growthcert.groups import GeneratorSet, element_from_word, parse_group, quotient_map

# frozen openings, agreed by BFS, the closed-form series, and the oracle below
FROZEN = {
    "bs:2": [1, 4, 12, 26, 50, 98],
    "bs:3": [1, 4, 12, 30, 70, 158],
    "lamplighter:2": [1, 3, 6, 12, 22, 40],
    "lamplighter:3": [1, 4, 10, 26, 58, 130],
    "wreathzz": [1, 4, 12, 36, 100, 268],
}


@pytest.mark.parametrize("descriptor", sorted(FROZEN))
def test_frozen_opening_spheres(descriptor):
    group = parse_group(descriptor)
    counts = enumerate_spheres(group, 5)
    assert counts.spheres == FROZEN[descriptor]
    assert counts.balls == list(itertools.accumulate(FROZEN[descriptor]))
    assert counts.radius == 5 and counts.group == descriptor


def all_words_sphere_counts(group, radius):
    """Independent oracle: evaluate every word over {a, a^-1, t, t^-1}."""
    a, t = group.generator("a"), group.generator("t")
    alphabet = [a, group.invert(a), t, group.invert(t)]
    shortest = {group.identity: 0}
    for length in range(1, radius + 1):
        for letters in itertools.product(alphabet, repeat=length):
            g = group.identity
            for x in letters:
                g = group.multiply(g, x)
            if g not in shortest:
                shortest[g] = length
    spheres = [0] * (radius + 1)
    for _, l in shortest.items():
        spheres[l] += 1
    return spheres


@pytest.mark.parametrize("descriptor", sorted(FROZEN))
def test_bfs_agrees_with_all_words_oracle(descriptor):
    group = parse_group(descriptor)
    assert enumerate_spheres(group, 4).spheres == all_words_sphere_counts(group, 4)


def test_lamplighter2_oracle_radius_five():
    # one deeper run of the quartic-alphabet oracle on the smallest group
    group = parse_group("lamplighter:2")
    assert all_words_sphere_counts(group, 5) == FROZEN["lamplighter:2"]


def test_workers_do_not_change_counts():
    group = parse_group("bs:3")
    assert enumerate_spheres(group, 8, workers=3).spheres == enumerate_spheres(group, 8).spheres


def test_quotients_shrink_balls():
    wz = parse_group("wreathzz")
    big = enumerate_spheres(wz, 7)
    for descriptor in ("bs:2", "bs:3", "lamplighter:2", "lamplighter:3"):
        small = enumerate_spheres(parse_group(descriptor), 7)
        assert all(s <= b for s, b in zip(small.balls, big.balls))


def test_quotient_image_of_ball_is_ball():
    wz = parse_group("wreathzz")
    bs2 = parse_group("bs:2")
    upstairs = ball_elements(wz, 5)
    image = {quotient_map(g, bs2) for g in upstairs}
    downstairs = ball_elements(bs2, 5)
    assert image == set(downstairs)
    # word lengths can only shrink along the quotient
    for g, length in upstairs.items():
        assert downstairs[quotient_map(g, bs2)] <= length


def test_custom_generator_counts():
    group = parse_group("bs:2")
    gens = GeneratorSet.from_spec(group, "x=t, z=a")
    same = enumerate_spheres(group, 6, generators=gens)
    assert same.spheres == enumerate_spheres(group, 6).spheres
    skew = GeneratorSet.from_spec(group, "x=a t, y=t")
    counts = enumerate_spheres(group, 6, generators=skew)
    assert counts.spheres[0] == 1 and counts.spheres[1] == 4
    assert counts.spheres != same.spheres


def test_ball_elements_word_lengths():
    group = parse_group("bs:2")
    lengths = ball_elements(group, 4)
    assert lengths[group.identity] == 0
    assert lengths[group.generator("a")] == 1
    assert lengths[element_from_word(group, "t a t^-1")] == 2  # equals a^2
    assert max(lengths.values()) == 4
    spheres = [0] * 5
    for l in lengths.values():
        spheres[l] += 1
    assert spheres == FROZEN["bs:2"][:5]


def test_resource_cap_carries_partial_counts():
    group = parse_group("bs:3")
    with pytest.raises(ResourceCapExceeded) as err:
        enumerate_spheres(group, 12, max_stored=120)
    exc = err.value
    assert exc.last_completed_radius >= 1
    partial = exc.partial
    assert partial.radius == exc.last_completed_radius
    assert len(partial.spheres) == exc.last_completed_radius + 1
    assert partial.spheres == FROZEN["bs:3"][: exc.last_completed_radius + 1]


def test_enumerate_for_descriptor_wrapper():
    counts = enumerate_for_descriptor("lamplighter:3", 4, generator_spec="a=a, t=t")
    assert counts.spheres == FROZEN["lamplighter:3"][:5]
    with pytest.raises(ValueError):
        enumerate_for_descriptor("bs:2", -1)


def test_estimate_rate_brackets_true_rate():
    counts = enumerate_spheres(parse_group("bs:3"), 10)
    est = estimate_rate(counts)
    # the true rate is 2; the ball ratio lands nearby, the root converges slowly
    assert 1.8 < float(est.last_ratio) < 2.3
    assert 2.0 < est.ball_root < 3.0
    assert "ball(10)" in est.summary()


def test_csv_and_json_round_trip():
    counts = enumerate_spheres(parse_group("lamplighter:2"), 6)
    lines = counts.to_csv().strip().splitlines()
    assert len(lines) == 7
    assert lines[0] == "0,1" and lines[4] == "4,22"
    again = SphereCounts.from_json(counts.to_json())
    assert again == counts


def test_free_monoid_distinctness_pass_and_collision():
    group = parse_group("bs:2")
    a, t = group.generator("a"), group.generator("t")
    free_pair = [t, group.multiply(group.multiply(a, t), t)]  # t and a t^2
    report = free_monoid_distinctness(group, free_pair, depth=6)
    assert report.ok and report.products_checked == 2**7 - 1
    assert "distinct" in report.summary()

    clash = free_monoid_distinctness(group, [t, group.power(t, 2)], depth=3)
    assert not clash.ok
    # t*t and t^2 spell the same element: indices (0,0) and (1,)
    assert set(clash.collision) == {(0, 0), (1,)}
    assert "collision" in clash.summary()

    with pytest.raises(ValueError):
        free_monoid_distinctness(group, [], depth=2)


def test_free_monoid_distinctness_budget():
    group = parse_group("bs:2")
    t = group.generator("t")
    at2 = element_from_word(group, "a t^2")
    with pytest.raises(ResourceCapExceeded):
        free_monoid_distinctness(group, [t, at2], depth=30, max_products=500)
