"""One-shot verification suite: every desk-scale claim as a named criterion.

Each criterion re-derives its facts from scratch (series expansion vs BFS,
certified roots, certificates, randomized tree properties) and reports one
pass/fail line.  The registry is shared by the command line front end and the
acceptance tests, so "the suite passes" means the same thing everywhere.

Quick mode lowers radii and randomized counts for sub-30-second runs; the
default settings are the published tolerances.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import trees
from .certificates import preset_certificate
from .enumeration import enumerate_spheres, free_monoid_distinctness
from .groups import GeneratorSet, Group, element_from_word, parse_group
from .roots import (
    bs2_rate_polynomial,
    growth_rate_polynomial,
    identity_suite,
    lamplighter_pole_polynomial,
    unique_positive_root,
    verify_inequality_chain,
)
from .series import (
    RationalFn,
    Polynomial,
    bs_growth_series,
    compare_series_to_counts,
    lamplighter_growth_series,
    parry_wreath,
    smallest_positive_pole,
    wreath_zz_series,
)

GOLDEN = (1 + math.sqrt(5)) / 2
SILVER = 1 + math.sqrt(2)


@dataclass
class CriterionResult:
    criterion: str
    passed: bool
    details: List[str]
    seconds: float

    def line(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return f"[{state}] {self.criterion} ({self.seconds:.2f}s)"

    def report(self) -> str:
        return "\n".join([self.line()] + [f"    {d}" for d in self.details])


@dataclass
class SuiteReport:
    results: List[CriterionResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def summary(self) -> str:
        lines = [r.report() for r in self.results]
        passed = sum(r.passed for r in self.results)
        lines.append(f"{passed}/{len(self.results)} criteria passed")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "criteria": [
                    {
                        "criterion": r.criterion,
                        "passed": r.passed,
                        "details": r.details,
                        "seconds": round(r.seconds, 3),
                    }
                    for r in self.results
                ],
                "all_passed": self.all_passed,
            },
            indent=2,
        )


@dataclass
class SuiteOptions:
    quick: bool = False
    radius: Optional[int] = None  # override for the series-vs-BFS radii
    kmax: Optional[int] = None  # override for the inequality-chain depth
    workers: int = 1
    trials: Optional[int] = None  # override for randomized counts


class _Check:
    """Collects assertion lines; the first failure marks the criterion failed."""

    def __init__(self):
        self.details: List[str] = []
        self.ok = True

    def expect(self, condition: bool, label: str) -> None:
        self.details.append(("ok  " if condition else "BAD ") + label)
        if not condition:
            self.ok = False

    def info(self, label: str) -> None:
        self.details.append("    " + label)


def _series_vs_bfs(check: _Check, descriptor: str, series: RationalFn,
                   radius: int, workers: int) -> None:
    group = parse_group(descriptor)
    counts = enumerate_spheres(group, radius, workers=workers)
    report = compare_series_to_counts(series, counts)
    check.expect(report.matches, f"{descriptor}: series == BFS spheres through radius {radius}")
    if not report.matches:
        check.info(report.summary())


def _crit_lamplighter_series(opts: SuiteOptions) -> _Check:
    check = _Check()
    plan = [(2, 14), (3, 12), (5, 10)]
    for p, radius in plan:
        radius = opts.radius if opts.radius is not None else radius
        if opts.quick:
            radius = min(radius, 10)
        _series_vs_bfs(check, f"lamplighter:{p}", lamplighter_growth_series(p),
                       radius, opts.workers)
    first = enumerate_spheres(parse_group("lamplighter:2"), 4).spheres
    check.expect(first == [1, 3, 6, 12, 22],
                 f"lamplighter:2 opening sphere counts are 1,3,6,12,22 (got {first})")
    return check


def _crit_bs_series(opts: SuiteOptions) -> _Check:
    check = _Check()
    plan = [(3, 12), (5, 10), (7, 10), (2, 12)]
    for n, radius in plan:
        radius = opts.radius if opts.radius is not None else radius
        if opts.quick:
            radius = min(radius, 10)
        _series_vs_bfs(check, f"bs:{n}", bs_growth_series(n), radius, opts.workers)
    first = enumerate_spheres(parse_group("bs:3"), 2).spheres
    check.expect(first == [1, 4, 12],
                 f"bs:3 opening sphere counts are 1,4,12 (got {first})")
    return check


def _crit_wreathzz_series(opts: SuiteOptions) -> _Check:
    check = _Check()
    radius = opts.radius if opts.radius is not None else 12
    if opts.quick:
        radius = min(radius, 10)
    _series_vs_bfs(check, "wreathzz", wreath_zz_series(), radius, opts.workers)
    x = Polynomial([0, 1])
    one = Polynomial([1])
    lamp_series = RationalFn(one + x, one - x)  # 1 + 2x + 2x^2 + ...
    check.expect(parry_wreath(lamp_series) == wreath_zz_series(),
                 "closed form equals the wreath construction applied to (1+x)/(1-x)")
    return check


def _crit_exact_rates(opts: SuiteOptions) -> _Check:
    check = _Check()
    tol = Fraction(1, 10**14)

    omega1 = unique_positive_root(growth_rate_polynomial(1), tol=tol)
    check.expect(omega1.is_exact() and omega1.lo == 2,
                 f"rate of the 3-adic family at k=1 is exactly 2 (got {omega1.decimal(6)})")

    l2_rate = 1 / smallest_positive_pole(lamplighter_growth_series(2), tol=tol).midpoint
    check.expect(abs(float(l2_rate) - GOLDEN) < 1e-12,
                 f"lamplighter:2 rate equals the golden ratio within 1e-12 "
                 f"(got {float(l2_rate):.15f})")

    zz_rate = 1 / smallest_positive_pole(wreath_zz_series(), tol=tol).midpoint
    check.expect(abs(float(zz_rate) - SILVER) < 1e-12,
                 f"wreathzz rate equals 1+sqrt(2) within 1e-12 (got {float(zz_rate):.15f})")

    beta_poly = bs2_rate_polynomial()
    beta = unique_positive_root(beta_poly, tol=Fraction(1, 10**13))
    residual = abs(beta_poly.evaluate(beta.midpoint))
    check.expect(residual < Fraction(1, 10**12),
                 f"bs:2 rate satisfies its cubic within 1e-12 (residual {float(residual):.2e})")
    check.expect(abs(beta.to_float() - 1.69572) < 1.5e-4,
                 f"bs:2 rate is 1.69572 up to printed rounding (got {beta.decimal(6)})")
    return check


def _crit_rate_crosscheck(opts: SuiteOptions) -> _Check:
    check = _Check()
    tol = Fraction(1, 10**14)
    for k in range(1, 6):
        p = 2 * k + 1
        bs_rate = 1 / smallest_positive_pole(bs_growth_series(p), tol=tol).midpoint
        root = unique_positive_root(growth_rate_polynomial(k), tol=tol).midpoint
        lamp_rate = 1 / smallest_positive_pole(lamplighter_growth_series(p), tol=tol).midpoint
        recip = 1 / unique_positive_root(lamplighter_pole_polynomial(k), tol=tol).midpoint
        check.expect(abs(bs_rate - root) < Fraction(1, 10**10),
                     f"k={k}: 1/pole of the bs:{p} series matches the degree-{k+1} root")
        check.expect(abs(lamp_rate - recip) < Fraction(1, 10**10),
                     f"k={k}: 1/pole of the lamplighter:{p} series matches the reciprocal root")
        check.expect(abs(bs_rate - lamp_rate) < Fraction(1, 10**10),
                     f"k={k}: bs:{p} and lamplighter:{p} share the rate")
    return check


def _crit_chain_and_identities(opts: SuiteOptions) -> _Check:
    check = _Check()
    kmax = opts.kmax if opts.kmax is not None else 50
    if opts.quick:
        kmax = min(kmax, 12)
    report = verify_inequality_chain(kmax, convergence_tol=Fraction(1, 10**9))
    # report.holds also demands convergence; that only makes sense at full depth
    check.expect(all(link.holds for link in report.links),
                 f"rate chain holds for k = 1..{kmax} "
                 "(golden <= rate_k <= bound_k < silver, rates increasing)")
    converged = report.converged if kmax >= 50 else True
    check.expect(converged,
                 f"|rate_{kmax} - (1+sqrt 2)| < 1e-9"
                 + ("" if kmax >= 50 else " (skipped below k=50)"))
    for item in identity_suite():
        check.expect(item.holds, f"identity: {item.name}")
        if not item.holds:
            check.info(item.note)
    return check


def _certificate_elements(group: Group, cert) -> list:
    gens = GeneratorSet(group, tuple(cert.generators))
    return [element_from_word(group, w, generators=gens) for w in cert.elements]


def _crit_certificates(opts: SuiteOptions) -> _Check:
    check = _Check()
    tol = Fraction(1, 10**13)
    depth = 4 if opts.quick else 6
    plan: List[Tuple[str, str, float, str]] = [
        ("bs:2", "bs2", unique_positive_root(bs2_rate_polynomial(), tol=tol).to_float(),
         "the bs:2 cubic root"),
        ("bs:3", "elliptic", 2.0, "2 (the k=1 rate)"),
        ("bs:5", "elliptic",
         unique_positive_root(growth_rate_polynomial(2), tol=tol).to_float(), "the k=2 rate"),
        ("bs:7", "elliptic",
         unique_positive_root(growth_rate_polynomial(3), tol=tol).to_float(), "the k=3 rate"),
        ("bs:5", "double-translation", SILVER, "1+sqrt(2)"),
        ("bs:5", "intermediate-translation", SILVER, "1+sqrt(2)"),
    ]
    for descriptor, preset, expected, label in plan:
        group = parse_group(descriptor)
        cert = preset_certificate(group, preset, tol=tol)
        check.expect(cert.verdict, f"{preset} on {descriptor}: certificate passes")
        if not cert.verdict:
            check.info(cert.reason)
            continue
        got = cert.bound.to_float()
        check.expect(abs(got - expected) < 1e-10,
                     f"{preset} on {descriptor}: bound is {label} (got {got:.12f})")
        freeness = free_monoid_distinctness(group, _certificate_elements(group, cert), depth)
        check.expect(freeness.ok,
                     f"{preset} on {descriptor}: brute-force distinctness to depth {depth} "
                     f"({freeness.products_checked} products)")
    return check


def _random_word(rng: random.Random, labels: Sequence[str], max_len: int) -> str:
    tokens = []
    for _ in range(rng.randint(1, max_len)):
        label = rng.choice(labels)
        exp = rng.choice((1, 1, 2, -1, -2))
        tokens.append(f"{label}^{exp}" if exp != 1 else label)
    return " ".join(tokens)


def _random_elliptic(rng: random.Random, group: Group, max_len: int = 8):
    g = element_from_word(group, _random_word(rng, ("a", "t"), max_len))
    shift = group.t_exponent(g)
    if shift:
        g = group.multiply(g, group.power(group.generator("t"), -shift))
    return g


def _random_vertex(rng: random.Random, group: Group, max_len: int = 6):
    v = trees.base_vertex(group)
    g = element_from_word(group, _random_word(rng, ("a", "t"), max_len))
    v = trees.act_on_vertex(group, g, v)
    for _ in range(rng.randint(0, 3)):
        v = trees.parent(v)
    return v


def _crit_orbit_randomized(opts: SuiteOptions) -> _Check:
    check = _Check()
    trials = opts.trials if opts.trials is not None else (200 if opts.quick else 1000)
    rng = random.Random(41)
    for descriptor in ("bs:3", "bs:5", "bs:7", "lamplighter:3", "lamplighter:5"):
        group = parse_group(descriptor)
        failures = 0
        fixed = moved = 0
        for _ in range(trials):
            g = _random_elliptic(rng, group)
            v = _random_vertex(rng, group)
            report = trees.elliptic_orbit_check(group, g, v)
            if report.fixed:
                fixed += 1
            else:
                moved += 1
            if not report.ok:
                failures += 1
        check.expect(failures == 0,
                     f"{descriptor}: {trials} random elliptic orbits pass "
                     f"({fixed} fixed, {moved} with distinct translates)")
    return check


def _crit_tree_invariants(opts: SuiteOptions) -> _Check:
    check = _Check()
    trials = opts.trials if opts.trials is not None else (2000 if opts.quick else 10000)
    rng = random.Random(42)
    groups = [parse_group(d) for d in
              ("bs:2", "bs:3", "bs:5", "lamplighter:2", "lamplighter:3", "lamplighter:5")]

    bad = 0
    for _ in range(trials):
        group = rng.choice(groups)
        g = element_from_word(group, _random_word(rng, ("a", "t"), 6))
        v = _random_vertex(rng, group)
        if trees.level(trees.act_on_vertex(group, g, v)) != trees.level(v) + group.t_exponent(g):
            bad += 1
    check.expect(bad == 0, f"orientation equivariance on {trials} random (g, v) pairs")

    bad = 0
    for _ in range(trials):
        group = rng.choice(groups)
        g = _random_elliptic(rng, group)
        v = _random_vertex(rng, group)
        fixed = trees.classify_element(group, g).fixed_vertex
        # walk down from the witness until g moves the vertex; fixed sets must be up-closed
        if trees.act_on_vertex(group, g, v) == v:
            p = trees.parent(v)
            if trees.act_on_vertex(group, g, p) != p:
                bad += 1
        if trees.act_on_vertex(group, g, fixed) != fixed:
            bad += 1
    check.expect(bad == 0, f"fixed sets are up-closed on {trials} random elliptic pairs")

    bad = 0
    for _ in range(trials):
        group = rng.choice(groups)
        g = element_from_word(group, _random_word(rng, ("a", "t"), 6))
        v = _random_vertex(rng, group)
        u = v
        for _ in range(rng.randint(1, 4)):  # a strict descendant of v
            u = rng.choice(trees.children(u))
        gu, gv = trees.act_on_vertex(group, g, u), trees.act_on_vertex(group, g, v)
        if not trees.is_strict_descendant(gu, gv):
            bad += 1
    check.expect(bad == 0, f"descendant equivariance on {trials} random pairs")

    bad = 0
    for _ in range(trials):
        group = rng.choice(groups)
        u, w, z = (_random_vertex(rng, group) for _ in range(3))
        if trees.tree_distance(u, w) > trees.tree_distance(u, z) + trees.tree_distance(z, w):
            bad += 1
    check.expect(bad == 0, f"meet distances satisfy the triangle inequality ({trials} triples)")
    return check


def _crit_exclusion(opts: SuiteOptions) -> _Check:
    check = _Check()
    check.expect(True, "minimal-rate statements quantify over all generating sets; "
                       "that search space is not enumerable at desk scale")
    check.info("substituted by: certificate presets (arbitrary-set lower bounds), "
               "series-vs-BFS oracles, and the randomized tree property suites")
    for required in ("certificates", "elliptic-orbit-randomized", "tree-invariants-randomized"):
        check.expect(required in CRITERIA, f"substitute criterion {required!r} is registered")
    return check


CRITERIA: Dict[str, Tuple[Callable[[SuiteOptions], _Check], str]] = {
    "lamplighter-series-vs-bfs": (
        _crit_lamplighter_series,
        "closed-form lamplighter series match BFS sphere counts exactly",
    ),
    "bs-series-vs-bfs": (
        _crit_bs_series,
        "closed-form bs series match BFS sphere counts exactly",
    ),
    "wreathzz-series-vs-bfs": (
        _crit_wreathzz_series,
        "wreathzz series matches BFS and its wreath construction",
    ),
    "exact-rates": (
        _crit_exact_rates,
        "exact and certified rate values at the published tolerances",
    ),
    "rate-crosscheck": (
        _crit_rate_crosscheck,
        "series poles against root-family polynomials, both families",
    ),
    "root-chain-and-identities": (
        _crit_chain_and_identities,
        "rate chain golden <= rate_k <= bound_k < silver plus exact identities",
    ),
    "certificates": (
        _crit_certificates,
        "named ping-pong certificates pass with their published bounds",
    ),
    "elliptic-orbit-randomized": (
        _crit_orbit_randomized,
        "odd-prime orbit distinctness on randomized elliptic elements",
    ),
    "tree-invariants-randomized": (
        _crit_tree_invariants,
        "equivariance, up-closedness, and metric properties of the trees",
    ),
    "large-scale-exclusion": (
        _crit_exclusion,
        "documented exclusion: infimum over all generating sets (substituted)",
    ),
}


def run_suite(
    criteria: Optional[Sequence[str]] = None,
    options: Optional[SuiteOptions] = None,
) -> SuiteReport:
    opts = options or SuiteOptions()
    names = list(criteria) if criteria else list(CRITERIA)
    unknown = [n for n in names if n not in CRITERIA]
    if unknown:
        raise KeyError(
            f"unknown criteria {', '.join(unknown)}; available: {', '.join(CRITERIA)}"
        )
    results = []
    for name in names:
        func, _ = CRITERIA[name]
        start = time.monotonic()
        check = func(opts)
        results.append(
            CriterionResult(name, check.ok, check.details, time.monotonic() - start)
        )
    return SuiteReport(results)
