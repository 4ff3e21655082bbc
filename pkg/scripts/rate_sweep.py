#!/usr/bin/env python3
"""Perimeter-growth experiment: sweep the allowed overlap fraction.

For each eps a surrounded-ball packing is built to exhaustion and the
exact perimeter of its union is compared against the central disk's.
The script prints the ratio table with the fitted log-log slope and can
optionally re-run the sweep with a doubled ball budget to show how far
the packings are from their asymptotic regime.
"""

import argparse
import sys

from ballcover.harness import check_example14_rate


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--eps-list",
        default="0.0316227766,0.01,0.0031622776,0.001",
        help="comma-separated strictly decreasing overlap fractions",
    )
    parser.add_argument("--delta", type=float, default=0.3,
                        help="annulus half-width around the central disk")
    parser.add_argument("--n-max", type=int, default=8000,
                        help="ball budget per packing")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--stability", action="store_true",
                        help="re-run with 2*n_max and report ratio drift")
    parser.add_argument("--csv", metavar="FILE",
                        help="also write an eps,ratio table to FILE")
    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)
    eps_list = [float(x) for x in args.eps_list.split(",")]
    fit = check_example14_rate(
        eps_list, delta=args.delta, n_max=args.n_max, seed=args.seed
    )
    print(f"{'eps':>12}  {'perimeter ratio':>16}")
    for eps, ratio in zip(fit.xs, fit.ys):
        print(f"{eps:>12.6g}  {ratio:>16.6f}")
    print(f"log-log slope {fit.slope:.4f}  intercept {fit.intercept:.4f}  "
          f"r^2 {fit.r_squared:.4f}  (target slope for the plane: -1/3)")

    if args.stability:
        doubled = check_example14_rate(
            eps_list, delta=args.delta, n_max=2 * args.n_max, seed=args.seed
        )
        drift = max(
            abs(b - a) / a for a, b in zip(fit.ys, doubled.ys)
        )
        print(f"ratio drift with ball budget {2 * args.n_max}: "
              f"{100.0 * drift:.3f}% (slope {doubled.slope:.4f})")

    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as handle:
            handle.write("eps,ratio\n")
            for eps, ratio in zip(fit.xs, fit.ys):
                handle.write(f"{eps!r},{ratio!r}\n")
        print(f"wrote {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
