#!/usr/bin/env python3
"""Ring-family experiment: perimeter ratio of a union versus its
selected subfamily as the ring gets finer.

Builds the unit disk surrounded by k overlapping small disks with the
total small-disk perimeter held fixed (k * tiny_radius constant), runs
the perimeter-controlling selection, and prints the exact perimeter
ratio for each k together with a log-log trend fit; a flat trend shows
the ratio stays bounded as the ring refines.
"""

import argparse
import sys

from ballcover import build_fig1
from ballcover.harness import check_thm12, fit_loglog


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--k-list", default="10,20,40,80,160",
        help="comma-separated increasing ring counts",
    )
    parser.add_argument(
        "--product", type=float, default=2.0,
        help="fixed value of k * tiny_radius across the sweep",
    )
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    ks = [int(k) for k in args.k_list.split(",")]
    ratios = []
    print(f"{'k':>6}  {'tiny radius':>12}  {'perimeter ratio':>16}")
    for k in ks:
        balls = build_fig1(k, args.product / k)
        report = check_thm12(balls, instance_id=f"ring-{k}")
        ratios.append(report.ratio)
        print(f"{k:>6}  {args.product / k:>12.6f}  {report.ratio:>16.6f}")
    fit = fit_loglog([float(k) for k in reversed(ks)], list(reversed(ratios)))
    print(f"spread max/min {max(ratios) / min(ratios):.4f}  "
          f"trend slope vs k {fit.slope:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
