"""Coset models of the Bass-Serre trees for bs:n and lamplighter:p.

Both families are ascending HNN extensions over the stable letter t, so their
trees are (n+1)- resp. (p+1)-regular with a level function induced by the
t-exponent: each vertex has one parent (level - 1) and n resp. p children.

Vertex coordinates:

* bs:n          -- (level k, residue r) with r in Z[1/n], 0 <= r < n^k; the
                   vertex is the coset (k, r) * <a>.  Levels may be negative,
                   in which case the modulus n^k is a fraction.
* lamplighter:p -- (level s, prefix) where prefix records the lamps at
                   positions < s; the vertex is the coset of the subgroup
                   generated by the lamps at positions >= 0, shifted to s.

The group acts by left translation; ``act_on_vertex`` implements it directly
on coordinates.  The action is level-equivariant: level(g v) = level(v) +
t_exponent(g).  Elements with t-exponent 0 are elliptic (they fix a vertex,
found by ascending from the base); all others translate along an axis with
translation length |t_exponent|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .groups import Group

SEARCH_DEPTH = 64  # parent-chain budget for fixed-point / axis searches


class TreeError(ValueError):
    pass


class TreeSearchExhausted(RuntimeError):
    """A bounded ascent/descent ran out of budget; carries what was tried."""


@dataclass(frozen=True)
class BsVertex:
    base: int
    level: int
    residue: Fraction

    def __post_init__(self):
        if not isinstance(self.residue, Fraction):
            object.__setattr__(self, "residue", Fraction(self.residue))
        modulus = Fraction(self.base) ** self.level
        if not 0 <= self.residue < modulus:
            raise TreeError(f"residue {self.residue} out of range for level {self.level}")

    def to_json(self) -> dict:
        return {
            "family": "bs",
            "level": self.level,
            "residue": f"{self.residue.numerator}/{self.residue.denominator}",
        }


@dataclass(frozen=True)
class LampVertex:
    modulus: int
    level: int
    prefix: Tuple[Tuple[int, int], ...]  # sorted ((position, value)), positions < level

    def __post_init__(self):
        for pos, val in self.prefix:
            if pos >= self.level:
                raise TreeError(f"prefix position {pos} not below level {self.level}")
            if not 0 < val < self.modulus:
                raise TreeError(f"prefix value {val} out of range mod {self.modulus}")

    def to_json(self) -> dict:
        return {
            "family": "lamplighter",
            "level": self.level,
            "prefix": {str(pos): val for pos, val in self.prefix},
        }


Vertex = object  # BsVertex | LampVertex


def base_vertex(group: Group) -> Vertex:
    if group.family == "bs":
        return BsVertex(group.parameter, 0, Fraction(0))
    if group.family == "lamplighter":
        return LampVertex(group.parameter, 0, ())
    raise TreeError(f"no tree model for {group.describe()}")


def _tree_group(group: Group, v: Vertex) -> None:
    if group.family == "bs":
        if not isinstance(v, BsVertex) or v.base != group.parameter:
            raise TreeError(f"{v!r} is not a vertex of the {group.describe()} tree")
    elif group.family == "lamplighter":
        if not isinstance(v, LampVertex) or v.modulus != group.parameter:
            raise TreeError(f"{v!r} is not a vertex of the {group.describe()} tree")
    else:
        raise TreeError(f"no tree model for {group.describe()}")


def parent(v: Vertex) -> Vertex:
    if isinstance(v, BsVertex):
        modulus = Fraction(v.base) ** (v.level - 1)
        return BsVertex(v.base, v.level - 1, v.residue % modulus)
    return LampVertex(v.modulus, v.level - 1,
                      tuple((p, w) for p, w in v.prefix if p < v.level - 1))


def children(v: Vertex) -> Tuple[Vertex, ...]:
    if isinstance(v, BsVertex):
        step = Fraction(v.base) ** v.level
        return tuple(
            BsVertex(v.base, v.level + 1, v.residue + j * step) for j in range(v.base)
        )
    out = []
    for j in range(v.modulus):
        prefix = v.prefix if j == 0 else tuple(sorted(v.prefix + ((v.level, j),)))
        out.append(LampVertex(v.modulus, v.level + 1, prefix))
    return tuple(out)


def vertex_neighbors(v: Vertex) -> Tuple[Vertex, Tuple[Vertex, ...]]:
    """(parent, children): the full neighbor set, parent first."""
    return parent(v), children(v)


def level(v: Vertex) -> int:
    return v.level


def ancestor_at_level(v: Vertex, target_level: int) -> Vertex:
    if target_level > v.level:
        raise TreeError(f"no ancestor of level {target_level} above level {v.level}")
    while v.level > target_level:
        v = parent(v)
    return v


def is_strict_descendant(u: Vertex, v: Vertex) -> bool:
    return u.level > v.level and ancestor_at_level(u, v.level) == v


def tree_meet(u: Vertex, w: Vertex) -> Tuple[Vertex, int]:
    """Deepest common ancestor and the tree distance d(u, w)."""
    du = dw = 0
    while u.level > w.level:
        u = parent(u)
        du += 1
    while w.level > u.level:
        w = parent(w)
        dw += 1
    while u != w:
        u, w = parent(u), parent(w)
        du += 1
        dw += 1
    return u, du + dw


def tree_distance(u: Vertex, w: Vertex) -> int:
    return tree_meet(u, w)[1]


def act_on_vertex(group: Group, g, v: Vertex) -> Vertex:
    """Left translation of the coset v by g."""
    _tree_group(group, v)
    group._own(g)
    if group.family == "bs":
        n = group.parameter
        new_level = g.k + v.level
        modulus = Fraction(n) ** new_level
        residue = (Fraction(n) ** g.k * v.residue + g.b) % modulus
        return BsVertex(n, new_level, residue)
    p = group.parameter
    new_level = g.shift + v.level
    acc: Dict[int, int] = dict(g.lamps)
    for pos, val in v.prefix:
        q = pos + g.shift
        w = (acc.get(q, 0) + val) % p
        if w:
            acc[q] = w
        else:
            acc.pop(q, None)
    prefix = tuple(sorted((pos, val) for pos, val in acc.items() if pos < new_level))
    return LampVertex(p, new_level, prefix)


# -- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    kind: str  # "elliptic" | "hyperbolic"
    sign: int  # 0 for elliptic, else sign of the t-exponent
    translation_length: int
    fixed_vertex: Optional[Vertex]  # a witness, elliptic only


def classify_element(group: Group, g, search_depth: int = SEARCH_DEPTH) -> Classification:
    """Elliptic/hyperbolic type of g on the tree.

    For these ascending HNN families an element is elliptic exactly when its
    t-exponent vanishes; the fixed-vertex witness is found by ascending from
    the base vertex (each elliptic element fixes every sufficiently high
    ancestor of the base).
    """
    exponent = group.t_exponent(g)
    if exponent != 0:
        return Classification("hyperbolic", 1 if exponent > 0 else -1, abs(exponent), None)
    v = base_vertex(group)
    for _ in range(search_depth + 1):
        if act_on_vertex(group, g, v) == v:
            return Classification("elliptic", 0, 0, v)
        v = parent(v)
    raise TreeSearchExhausted(
        f"no fixed vertex within {search_depth} ancestors of the base for {g!r}"
    )


def on_axis(group: Group, x, v: Vertex) -> bool:
    """Whether v lies on the translation axis of hyperbolic x."""
    tau = abs(group.t_exponent(x))
    if tau == 0:
        raise TreeError("on_axis wants a hyperbolic element")
    return tree_distance(v, act_on_vertex(group, x, v)) == tau


def axis_projection(group: Group, x, v: Vertex, search_depth: int = SEARCH_DEPTH) -> Vertex:
    """Nearest point of the axis of x: the lowest ancestor of v on the axis.

    Every path from v into the axis passes through an ancestor of v, and
    ancestors of axis vertices stay on the axis, so the first on-axis ancestor
    is the gate vertex.
    """
    for _ in range(search_depth + 1):
        if on_axis(group, x, v):
            return v
        v = parent(v)
    raise TreeSearchExhausted(f"axis of {x!r} not reached within {search_depth} ascents")


def _positive_power(group: Group, x):
    # normalize a hyperbolic element to positive orientation (same axis)
    return x if group.t_exponent(x) > 0 else group.invert(x)


def axis_child(group: Group, x, q: Vertex) -> Vertex:
    """The descending axis neighbor of an on-axis vertex q.

    The axis of a positive hyperbolic element descends from q straight to
    x(q); its first step is the child of q lying under x(q).
    """
    forward = _positive_power(group, x)
    target = act_on_vertex(group, forward, q)
    return ancestor_at_level(target, q.level + 1)


def lowest_fixed_vertex_on_axis(
    group: Group, z, x, search_depth: int = SEARCH_DEPTH
) -> Vertex:
    """Lowest vertex of the axis of x fixed by the elliptic element z.

    Preconditions (verified here): z elliptic and z moves some axis vertex
    (i.e. z does not fix the whole axis within the search window, which also
    certifies z(axis) != axis since the moved child leaves the axis).
    """
    if group.t_exponent(z) != 0:
        raise TreeError("z must be elliptic (zero t-exponent)")
    x = _positive_power(group, x)
    if group.t_exponent(x) == 0:
        raise TreeError("x must be hyperbolic (nonzero t-exponent)")
    q = axis_projection(group, x, base_vertex(group), search_depth)
    for _ in range(search_depth + 1):
        if act_on_vertex(group, z, q) == q:
            break
        q = parent(q)
    else:
        raise TreeSearchExhausted(
            f"no fixed axis vertex within {search_depth} ascents; is z elliptic here?"
        )
    for _ in range(search_depth + 1):
        child = axis_child(group, x, q)
        if act_on_vertex(group, z, child) != child:
            return q
        q = child
    raise TreeSearchExhausted(
        f"z fixes the explored axis window ({search_depth} descents); "
        "z(axis) = axis violates the certificate precondition"
    )


def lowest_common_axis_vertex(
    group: Group, x, y, search_depth: int = SEARCH_DEPTH
) -> Vertex:
    """Lowest vertex lying on both axes L_x and L_y.

    Both axes are monotone in the level map and their ascending ends merge
    (every vertex has one parent), so the intersection is an ascending ray;
    this returns its lowest point.  Raises TreeSearchExhausted when the axes
    agree along the whole explored window, which happens exactly when they
    coincide as far as the search can see.
    """
    x = _positive_power(group, x)
    y = _positive_power(group, y)
    if group.t_exponent(x) == 0 or group.t_exponent(y) == 0:
        raise TreeError("both elements must be hyperbolic")
    q = axis_projection(group, x, base_vertex(group), search_depth)
    for _ in range(search_depth + 1):
        if on_axis(group, y, q):
            break
        q = parent(q)
    else:
        raise TreeSearchExhausted(
            f"the axes did not meet within {search_depth} ascents"
        )
    for _ in range(search_depth + 1):
        descent = axis_child(group, x, q)
        if descent != axis_child(group, y, q):
            return q
        q = descent
    raise TreeSearchExhausted(
        f"the axes agree on every explored descending step ({search_depth} levels); "
        "distinct axes are a precondition here"
    )


# -- elliptic orbit distinctness ----------------------------------------------------


@dataclass
class OrbitReport:
    fixed: bool
    distinct: bool
    images: Tuple[Vertex, ...]

    @property
    def ok(self) -> bool:
        return self.fixed or self.distinct


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def elliptic_orbit_check(group: Group, g, v: Vertex) -> OrbitReport:
    """For odd prime parameter p = 2k+1 and elliptic g: either g fixes v or the
    translates g^-k(v), ..., g^k(v) are pairwise distinct."""
    p = group.parameter
    if not _is_odd_prime(p):
        raise TreeError(f"parameter {p} is not an odd prime")
    if group.t_exponent(g) != 0:
        raise TreeError("g must be elliptic (zero t-exponent)")
    k = (p - 1) // 2
    if act_on_vertex(group, g, v) == v:
        return OrbitReport(fixed=True, distinct=True, images=(v,))
    images = []
    for j in range(-k, k + 1):
        images.append(act_on_vertex(group, group.power(g, j), v))
    distinct = len(set(images)) == len(images)
    return OrbitReport(fixed=False, distinct=distinct, images=tuple(images))
