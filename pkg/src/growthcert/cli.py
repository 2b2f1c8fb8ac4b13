"""Command line front end: spheres, rate, certify, verify.

Exit codes are a stable contract: 0 success, 1 verification failure, 2 usage
error, 3 resource cap.  JSON output round-trips through the documented
schemas; CSV is (radius, sphere) pairs.  The stored-element budget for BFS
can be set with the GROWTHCERT_MAX_STORED environment variable or the
--max-stored flag (the flag wins).
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .certificates import (
    CertificateError,
    PRESET_NAMES,
    certificate_from_words,
    preset_certificate,
)
from .enumeration import (
    DEFAULT_MAX_STORED,
    ResourceCapExceeded,
    enumerate_spheres,
)
from .groups import GeneratorSet, Group, GroupError, element_from_word, parse_group
from .roots import (
    RootError,
    bs2_rate_polynomial,
    golden_ratio_polynomial,
    growth_rate_polynomial,
    silver_ratio_polynomial,
    unique_positive_root,
)
from .series import SeriesError
from .trees import TreeError, TreeSearchExhausted, act_on_vertex, base_vertex
from .verify import CRITERIA, SuiteOptions, run_suite

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(ValueError):
    pass


def _parse_tol(text: str) -> Fraction:
    try:
        tol = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse tolerance {text!r}") from None
    if tol <= 0:
        raise UsageError("tolerance must be positive")
    return tol


def _max_stored(args) -> int:
    if args.max_stored is not None:
        return args.max_stored
    env = os.environ.get("GROWTHCERT_MAX_STORED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(
                f"GROWTHCERT_MAX_STORED must be an integer (got {env!r})"
            ) from None
    return DEFAULT_MAX_STORED


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _generator_set(group: Group, spec: Optional[str]) -> Optional[GeneratorSet]:
    if spec is None:
        return None
    return GeneratorSet.from_spec(group, spec)


def cmd_spheres(args) -> int:
    group = parse_group(args.group)
    gens = _generator_set(group, args.generators)
    try:
        counts = enumerate_spheres(
            group,
            args.radius,
            generators=gens,
            max_stored=_max_stored(args),
            workers=args.workers,
        )
    except ResourceCapExceeded as exc:
        sys.stderr.write(
            f"resource cap: {exc}; partial results through radius "
            f"{exc.last_completed_radius}\n"
        )
        sys.stderr.write(exc.partial.to_csv())
        return EXIT_RESOURCE
    if args.format == "json":
        _emit(counts.to_json(), args.output)
    elif args.format == "csv":
        _emit(counts.to_csv().rstrip("\n"), args.output)
    else:
        lines = [f"{'radius':>6}  {'sphere':>12}  {'ball':>12}"]
        for r, (s, b) in enumerate(zip(counts.spheres, counts.balls)):
            lines.append(f"{r:>6}  {s:>12}  {b:>12}")
        _emit("\n".join(lines), args.output)
    return EXIT_OK


def _rate_polynomial(group: Group):
    if group.family == "wreathzz":
        return silver_ratio_polynomial()
    p = group.parameter
    if p == 2:
        return bs2_rate_polynomial() if group.family == "bs" else golden_ratio_polynomial()
    if p % 2 == 1:
        return growth_rate_polynomial((p - 1) // 2)
    raise UsageError(
        f"no closed-form rate for {group.describe()}: even parameters above 2 "
        "have no published formula here"
    )


def cmd_rate(args) -> int:
    group = parse_group(args.group)
    poly = _rate_polynomial(group)
    interval = unique_positive_root(poly, tol=_parse_tol(args.tol))
    if args.format == "json":
        import json

        _emit(json.dumps({
            "group": group.describe(),
            "polynomial": poly.primitive().integer_coeffs(),
            "rate": interval.to_json(),
        }, indent=2), args.output)
    else:
        lines = [
            f"group:       {group.describe()}",
            f"rate:        {interval.decimal(12)}",
            f"polynomial:  {poly}",
            f"interval:    [{interval.lo}, {interval.hi}]",
        ]
        _emit("\n".join(lines), args.output)
    return EXIT_OK


def _resolve_vertex(group: Group, spec: str):
    if spec == "base":
        return base_vertex(group)
    # any other spec is a word acted on the base vertex, e.g. "t a"
    g = element_from_word(group, spec)
    return act_on_vertex(group, g, base_vertex(group))


def cmd_certify(args) -> int:
    group = parse_group(args.group)
    tol = _parse_tol(args.tol)
    if args.preset:
        overrides = None
        if args.generators:
            gens = GeneratorSet.from_spec(group, args.generators)
            overrides = {label: word for label, word, _ in gens.entries}
        cert = preset_certificate(group, args.preset, tol=tol, overrides=overrides)
    else:
        if not args.elements:
            raise UsageError("certify needs --preset or --elements")
        words = [w.strip() for w in args.elements.split(",") if w.strip()]
        gens = _generator_set(group, args.generators)
        vertex = _resolve_vertex(group, args.vertex)
        cert = certificate_from_words(group, words, vertex, generators=gens, tol=tol)
    _emit(cert.to_json() if args.format == "json" else cert.summary(), args.output)
    return EXIT_OK if cert.verdict else EXIT_VERIFICATION


def cmd_verify(args) -> int:
    options = SuiteOptions(
        quick=args.quick,
        radius=args.radius,
        kmax=args.kmax,
        workers=args.workers,
        trials=args.trials,
    )
    try:
        report = run_suite(args.criterion or None, options)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    _emit(report.to_json() if args.format == "json" else report.summary(), args.output)
    return EXIT_OK if report.all_passed else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growthcert",
        description="Exact growth series, certified growth rates, and "
                    "free-submonoid certificates for the supported groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("text", "json")):
        p.add_argument("--format", choices=fmt, default=fmt[0], help="output format")
        p.add_argument("--output", help="write the report to a file instead of stdout")

    p = sub.add_parser("spheres", help="BFS sphere and ball counts")
    p.add_argument("--group", required=True, help="bs:N | lamplighter:P | wreathzz")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--generators", help='labeled words, e.g. "x=a t t, y=t"')
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-stored", type=int, default=None,
                   help="stored-element cap (default %d or GROWTHCERT_MAX_STORED)"
                        % DEFAULT_MAX_STORED)
    common(p, fmt=("text", "json", "csv"))
    p.set_defaults(func=cmd_spheres)

    p = sub.add_parser("rate", help="certified growth rate for the canonical generators")
    p.add_argument("--group", required=True)
    p.add_argument("--tol", default="1e-12", help="interval width target")
    common(p)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("certify", help="check a free-submonoid certificate")
    p.add_argument("--group", required=True)
    p.add_argument("--preset", choices=PRESET_NAMES,
                   help="one of the named constructions")
    p.add_argument("--elements", help='comma-separated words, e.g. "t, a t t"')
    p.add_argument("--generators",
                   help="certificate alphabet for --elements, or witness "
                        "overrides for --preset")
    p.add_argument("--vertex", default="base",
                   help='"base" or a word applied to the base vertex')
    p.add_argument("--tol", default="1e-12")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="run the acceptance criteria suite")
    p.add_argument("--criterion", action="append", choices=sorted(CRITERIA),
                   help="run only this criterion (repeatable)")
    p.add_argument("--quick", action="store_true", help="reduced radii and trial counts")
    p.add_argument("--radius", type=int, default=None,
                   help="override the series-vs-BFS radii")
    p.add_argument("--kmax", type=int, default=None,
                   help="override the inequality-chain depth")
    p.add_argument("--trials", type=int, default=None,
                   help="override randomized trial counts")
    p.add_argument("--workers", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (GroupError, SeriesError, RootError, CertificateError,
            TreeError, TreeSearchExhausted) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ResourceCapExceeded as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
