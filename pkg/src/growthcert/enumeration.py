"""Breadth-first sphere counting on Cayley graphs, exact and deterministic.

The enumerator walks balls of the word metric for any of the supported groups
and any labeled generating set (canonical {a, t} by default).  Elements are
deduplicated by normal form, so counts are exact.  A stored-element cap guards
against runaway growth; hitting it raises ResourceCapExceeded with the last
fully completed radius.

Counts are *spheres* (elements of length exactly r) plus cumulative balls, and
serialize to the JSON/CSV shapes used by the command line front end.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .groups import GeneratorSet, Group, parse_group

DEFAULT_MAX_STORED = 2 * 10**7


class ResourceCapExceeded(RuntimeError):
    """BFS exceeded the stored-element budget.

    Carries the last radius whose sphere was fully enumerated and the counts
    up to that radius.
    """

    def __init__(self, message: str, last_completed_radius: int, partial: "SphereCounts"):
        super().__init__(message)
        self.last_completed_radius = last_completed_radius
        self.partial = partial


@dataclass
class SphereCounts:
    group: str
    generators: List[str]
    radius: int
    spheres: List[int]
    balls: List[int]

    def to_json(self) -> str:
        return json.dumps(
            {
                "group": self.group,
                "generators": self.generators,
                "radius": self.radius,
                "spheres": self.spheres,
                "balls": self.balls,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SphereCounts":
        data = json.loads(text)
        return cls(
            group=data["group"],
            generators=list(data["generators"]),
            radius=int(data["radius"]),
            spheres=[int(v) for v in data["spheres"]],
            balls=[int(v) for v in data["balls"]],
        )

    def to_csv(self) -> str:
        # (radius, sphere) pairs, no header: radius R yields exactly R+1 rows
        buf = io.StringIO()
        writer = csv.writer(buf)
        for r, s in enumerate(self.spheres):
            writer.writerow([r, s])
        return buf.getvalue()


def _expand_chunk(group: Group, chunk, gens):
    multiply = group.multiply
    return [multiply(g, s) for g in chunk for _, s in gens]


def _bfs(group: Group, radius: int, generators: GeneratorSet, max_stored: int, workers: int,
         collect: bool):
    closure = generators.closure()
    identity = group.identity
    seen = {identity: 0} if collect else {identity}
    frontier = [identity]
    spheres = [1]
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for r in range(1, radius + 1):
            if pool is not None:
                step = max(1, (len(frontier) + workers - 1) // workers)
                chunks = [frontier[i : i + step] for i in range(0, len(frontier), step)]
                produced = pool.map(lambda c: _expand_chunk(group, c, closure), chunks)
                candidates = (h for batch in produced for h in batch)
            else:
                candidates = _expand_chunk(group, frontier, closure)
            next_frontier = []
            for h in candidates:
                if h not in seen:
                    if collect:
                        seen[h] = r
                    else:
                        seen.add(h)
                    next_frontier.append(h)
            frontier = next_frontier
            spheres.append(len(frontier))
            if len(seen) > max_stored:
                counts = _make_counts(group, generators, r - 1, spheres[:-1])
                raise ResourceCapExceeded(
                    f"stored-element cap {max_stored} exceeded while expanding radius {r} "
                    f"of {group.describe()} (last completed radius {r - 1})",
                    last_completed_radius=r - 1,
                    partial=counts,
                )
    finally:
        if pool is not None:
            pool.shutdown(wait=False)
    return spheres, (seen if collect else None)


def _make_counts(group: Group, generators: GeneratorSet, radius: int, spheres: List[int]) -> SphereCounts:
    balls = []
    total = 0
    for s in spheres:
        total += s
        balls.append(total)
    return SphereCounts(
        group=group.describe(),
        generators=generators.labels(),
        radius=radius,
        spheres=spheres,
        balls=balls,
    )


def enumerate_spheres(
    group: Group,
    radius: int,
    generators: Optional[GeneratorSet] = None,
    max_stored: int = DEFAULT_MAX_STORED,
    workers: int = 1,
) -> SphereCounts:
    """Sphere and ball sizes of (group, generators) up to ``radius``.

    Deterministic for any ``workers`` value: parallel expansion only fans out
    the product computations; deduplication is a single sequential pass in
    chunk order.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if generators is None:
        generators = GeneratorSet.canonical(group)
    spheres, _ = _bfs(group, radius, generators, max_stored, workers, collect=False)
    return _make_counts(group, generators, radius, spheres)


def ball_elements(
    group: Group,
    radius: int,
    generators: Optional[GeneratorSet] = None,
    max_stored: int = DEFAULT_MAX_STORED,
) -> Dict[object, int]:
    """All elements of the radius-``radius`` ball, mapped to their word length."""
    if generators is None:
        generators = GeneratorSet.canonical(group)
    _, elements = _bfs(group, radius, generators, max_stored, workers=1, collect=True)
    return elements


@dataclass
class RateEstimate:
    """Diagnostic growth estimates from enumerated counts (floats, not certified)."""

    group: str
    radius: int
    last_ratio: Fraction
    ball_root: float

    def summary(self) -> str:
        return (
            f"{self.group}: ball({self.radius})/ball({self.radius - 1}) = "
            f"{float(self.last_ratio):.6f}, ball({self.radius})^(1/{self.radius}) = "
            f"{self.ball_root:.6f}"
        )


def estimate_rate(counts: SphereCounts) -> RateEstimate:
    """Last ball ratio and ball-size root; converges to the growth rate slowly."""
    if counts.radius < 1:
        raise ValueError("need radius >= 1 to estimate a rate")
    ratio = Fraction(counts.balls[-1], counts.balls[-2])
    root = counts.balls[-1] ** (1.0 / counts.radius)
    return RateEstimate(counts.group, counts.radius, ratio, root)


@dataclass
class FreenessReport:
    ok: bool
    depth: int
    products_checked: int
    collision: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None

    def summary(self) -> str:
        if self.ok:
            return f"{self.products_checked} formal products to depth {self.depth} are pairwise distinct"
        a, b = self.collision
        return f"collision: products {list(a)} and {list(b)} evaluate equally"


def free_monoid_distinctness(
    group: Group, elements, depth: int, max_products: int = 2 * 10**6
) -> FreenessReport:
    """Check that all formal products of ``elements`` up to ``depth`` differ.

    Products are indexed by tuples over range(len(elements)); the empty product
    (identity) participates, so no nonempty product may evaluate trivially.
    This certifies free-monoid behavior only up to the stated depth.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("need at least one element")
    seen = {group.identity: ()}
    level = [(group.identity, ())]
    checked = 1
    for _ in range(depth):
        next_level = []
        for g, word in level:
            for i, x in enumerate(elements):
                h = group.multiply(g, x)
                new_word = word + (i,)
                checked += 1
                if checked > max_products:
                    raise ResourceCapExceeded(
                        f"product budget {max_products} exceeded at depth {len(new_word)}",
                        last_completed_radius=len(word),
                        partial=None,
                    )
                if h in seen:
                    return FreenessReport(
                        ok=False, depth=depth, products_checked=checked,
                        collision=(seen[h], new_word),
                    )
                seen[h] = new_word
                next_level.append((h, new_word))
        level = next_level
    return FreenessReport(ok=True, depth=depth, products_checked=checked)


def enumerate_for_descriptor(descriptor: str, radius: int, generator_spec: Optional[str] = None,
                             max_stored: int = DEFAULT_MAX_STORED, workers: int = 1) -> SphereCounts:
    """Convenience wrapper: parse group + optional generator spec, then enumerate."""
    group = parse_group(descriptor)
    generators = (
        GeneratorSet.from_spec(group, generator_spec) if generator_spec else None
    )
    return enumerate_spheres(group, radius, generators, max_stored=max_stored, workers=workers)
