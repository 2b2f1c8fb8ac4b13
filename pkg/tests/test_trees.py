"""Coset-tree geometry: hand-checked vertices, actions, axes, orbit counts."""

import random
from fractions import Fraction as F

import pytest

from growthcert.groups import element_from_word, parse_group
from growthcert.trees import (
    BsVertex,
    LampVertex,
    TreeError,
    TreeSearchExhausted,
    act_on_vertex,
    ancestor_at_level,
    axis_child,
    axis_projection,
    base_vertex,
    children,
    classify_element,
    elliptic_orbit_check,
    is_strict_descendant,
    lowest_common_axis_vertex,
    lowest_fixed_vertex_on_axis,
    parent,
    tree_distance,
    tree_meet,
)

bs2 = parse_group("bs:2")
bs3 = parse_group("bs:3")
bs5 = parse_group("bs:5")
l2 = parse_group("lamplighter:2")
l3 = parse_group("lamplighter:3")
l5 = parse_group("lamplighter:5")


def test_base_vertex_and_neighbors():
    b = base_vertex(bs2)
    assert b == BsVertex(2, 0, F(0))
    assert parent(b) == BsVertex(2, -1, F(0))
    assert children(b) == (BsVertex(2, 1, F(0)), BsVertex(2, 1, F(1)))
    for ch in children(b):
        assert parent(ch) == b


def test_vertex_validation():
    with pytest.raises(TreeError):
        BsVertex(2, 1, F(2))        # residue out of range
    with pytest.raises(TreeError):
        BsVertex(2, 1, F(-1))
    BsVertex(2, -2, F(1, 8))        # fractional residues below the base line
    with pytest.raises(TreeError):
        BsVertex(2, -2, F(1, 4))    # must stay below the level's modulus 2^-2
    with pytest.raises(TreeError):
        LampVertex(3, 1, ((1, 1),))  # lamp position must sit below the level
    with pytest.raises(TreeError):
        LampVertex(3, 2, ((0, 3),))  # lamp value must be a nonzero residue


def test_meets_and_distances():
    b = base_vertex(bs2)
    c0, c1 = children(b)
    assert tree_meet(c0, c1) == (b, 2)
    assert tree_meet(BsVertex(2, 2, F(1)), BsVertex(2, 2, F(3))) == (BsVertex(2, 1, F(1)), 2)
    assert tree_meet(b, b) == (b, 0)
    assert tree_distance(b, BsVertex(2, 3, F(5))) == 3
    assert tree_distance(BsVertex(2, -2, F(0)), BsVertex(2, 1, F(1))) == 3


def test_ancestors_and_descendants():
    v = BsVertex(2, 3, F(5))
    assert ancestor_at_level(v, 1) == BsVertex(2, 1, F(1))
    assert is_strict_descendant(v, BsVertex(2, 1, F(1)))
    assert not is_strict_descendant(v, v)
    assert not is_strict_descendant(BsVertex(2, 1, F(1)), v)
    assert not is_strict_descendant(BsVertex(2, 3, F(6)), BsVertex(2, 1, F(1)))


def test_lamplighter_children():
    lb = base_vertex(l3)
    kids = children(lb)
    assert len(kids) == 3
    assert kids[0] == LampVertex(3, 1, ())
    assert kids[1] == LampVertex(3, 1, ((0, 1),))
    for ch in kids:
        assert parent(ch) == lb


def test_bs_action_on_vertices():
    a = bs2.generator("a")
    v10 = BsVertex(2, 1, F(0))
    assert act_on_vertex(bs2, a, v10) == BsVertex(2, 1, F(1))
    # a^2 acts trivially on level-1 residues mod 2
    assert act_on_vertex(bs2, bs2.power(a, 2), v10) == v10


def test_second_generation_orbit_has_order_four():
    # a cycles the four level-2 vertices (2,0) -> (2,1) -> (2,2) -> (2,3) -> (2,0)
    a = bs2.generator("a")
    lvl2 = [BsVertex(2, 2, F(j)) for j in range(4)]
    for j in range(4):
        assert act_on_vertex(bs2, a, lvl2[j]) == lvl2[(j + 1) % 4]


def test_action_is_by_tree_automorphisms():
    rng = random.Random(8)
    for group in (bs2, bs3, l3):
        for _ in range(50):
            g = group.identity
            for _ in range(rng.randrange(8)):
                lab = rng.choice(["a", "t"])
                g = group.multiply(g, group.power(group.generator(lab), rng.choice([-1, 1])))
            v = base_vertex(group)
            for _ in range(rng.randrange(4)):
                v = rng.choice(children(v))
            gv = act_on_vertex(group, g, v)
            assert act_on_vertex(group, g, parent(v)) == parent(gv)


def test_classification():
    c = classify_element(bs3, bs3.generator("a"))
    assert c.kind == "elliptic" and c.fixed_vertex == base_vertex(bs3)
    c = classify_element(bs3, bs3.generator("t"))
    assert c.kind == "hyperbolic" and c.sign == 1 and c.translation_length == 1
    c = classify_element(bs3, element_from_word(bs3, "a t^-2 a"))
    assert c.kind == "hyperbolic" and c.sign == -1 and c.translation_length == 2
    c = classify_element(l2, element_from_word(l2, "a t^2"))
    assert c.kind == "hyperbolic" and c.translation_length == 2
    c = classify_element(bs2, bs2.identity)
    assert c.kind == "elliptic" and c.translation_length == 0


def test_classification_finds_high_fixed_vertices():
    # t^-2 a t^2 moves the base vertex but fixes an ancestor
    g = element_from_word(bs2, "t^-2 a t^2")
    c = classify_element(bs2, g)
    assert c.kind == "elliptic"
    assert act_on_vertex(bs2, g, c.fixed_vertex) == c.fixed_vertex
    assert c.fixed_vertex.level <= -2


def test_axis_projection_and_axis_child():
    t = bs2.generator("t")
    assert axis_projection(bs2, t, base_vertex(bs2)) == base_vertex(bs2)
    assert axis_projection(bs2, t, BsVertex(2, 1, F(1))) == base_vertex(bs2)
    # axis of t descends through residue 0
    assert axis_child(bs2, t, base_vertex(bs2)) == BsVertex(2, 1, F(0))
    x = element_from_word(bs5, "a t^3")
    assert axis_child(bs5, x, base_vertex(bs5)) == BsVertex(5, 1, F(1))


def test_lowest_fixed_vertex_on_axis():
    a2, t2 = bs2.generator("a"), bs2.generator("t")
    assert lowest_fixed_vertex_on_axis(bs2, a2, t2) == base_vertex(bs2)
    a5, t5 = bs5.generator("a"), bs5.generator("t")
    assert lowest_fixed_vertex_on_axis(bs5, bs5.power(a5, 2), t5) == base_vertex(bs5)
    with pytest.raises(TreeSearchExhausted):
        lowest_fixed_vertex_on_axis(bs2, bs2.identity, t2)
    with pytest.raises(TreeError):
        lowest_fixed_vertex_on_axis(bs2, t2, t2)  # first argument must be elliptic


def test_lowest_common_axis_vertex():
    x = element_from_word(bs5, "a t^3")
    y = bs5.generator("t")
    v0 = lowest_common_axis_vertex(bs5, x, y)
    assert v0 == BsVertex(5, 0, F(0))
    vx = axis_child(bs5, x, v0)
    assert vx == BsVertex(5, 1, F(1))
    assert act_on_vertex(bs5, bs5.invert(x), vx) == BsVertex(5, -2, F(0))
    with pytest.raises(TreeSearchExhausted):
        lowest_common_axis_vertex(bs5, y, bs5.power(y, 2))  # identical axes


def test_elliptic_orbit_check():
    rep = elliptic_orbit_check(bs3, bs3.generator("a"), BsVertex(3, 1, F(0)))
    assert rep.ok and not rep.fixed and len(rep.images) == 3
    rep = elliptic_orbit_check(bs3, bs3.identity, BsVertex(3, 1, F(0)))
    assert rep.ok and rep.fixed
    rep = elliptic_orbit_check(l5, l5.generator("a"), children(base_vertex(l5))[0])
    assert rep.ok and not rep.fixed and len(set(rep.images)) == 5
    with pytest.raises(TreeError):
        elliptic_orbit_check(bs2, bs2.generator("a"), base_vertex(bs2))  # p = 2 not odd
    with pytest.raises(TreeError):
        elliptic_orbit_check(bs3, bs3.generator("t"), base_vertex(bs3))  # not elliptic


def test_vertex_json():
    blob = BsVertex(2, -2, F(1, 8)).to_json()
    assert blob == {"family": "bs", "level": -2, "residue": "1/8"}
    blob = LampVertex(3, 2, ((0, 2), (1, 1))).to_json()
    assert blob["family"] == "lamplighter" and blob["level"] == 2
    assert blob["prefix"] == {"0": 2, "1": 1}
