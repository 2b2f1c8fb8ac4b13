"""Count spheres by BFS and check them against the exact generating functions.

Run: python3 demos/sphere_counts.py
"""

from growthcert import (
    bs_growth_series,
    compare_series_to_counts,
    enumerate_spheres,
    estimate_rate,
    lamplighter_growth_series,
    parse_group,
    wreath_zz_series,
)

PLAN = [
    ("bs:2", bs_growth_series(2), 10),
    ("bs:3", bs_growth_series(3), 10),
    ("lamplighter:2", lamplighter_growth_series(2), 12),
    ("lamplighter:3", lamplighter_growth_series(3), 10),
    ("wreathzz", wreath_zz_series(), 10),
]


def main():
    for descriptor, series, radius in PLAN:
        group = parse_group(descriptor)
        counts = enumerate_spheres(group, radius)
        report = compare_series_to_counts(series, counts)
        print(f"{descriptor:>15}  spheres {counts.spheres[:7]} ...")
        print(f"{'':>15}  {report.summary()}")
        print(f"{'':>15}  {estimate_rate(counts).summary()}")
        print()


if __name__ == "__main__":
    main()
