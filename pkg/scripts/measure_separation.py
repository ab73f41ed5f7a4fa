#!/usr/bin/env python3
"""Tabulate combined expansion against conductance on clustered graphs.

For each degree, builds a few clustered-regular instances (dense regular
components plus one random extra edge per node), enumerates both graph-level
measures exactly, and prints the mean ratio. The ratio widening as the degree
grows is the point of the table. Instance sizes grow with the degree, and the
exact enumeration is exponential, so keep degrees modest.
"""

import argparse
import csv
import sys

from rumorspread import combined_vs_conductance_table

COLUMNS = ("degree", "n", "instances", "mean_conductance", "mean_combined", "mean_ratio")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--degrees",
        default="3,4,5",
        help="comma list of component degrees to test",
    )
    parser.add_argument("--instances", type=int, default=3)
    parser.add_argument("--components", type=int, default=2)
    parser.add_argument("--c", type=int, default=2, help="component size factor")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="also write the table as CSV")
    args = parser.parse_args(argv)

    degrees = tuple(int(tok) for tok in args.degrees.split(","))
    rows = combined_vs_conductance_table(
        degrees,
        c=args.c,
        num_components=args.components,
        instances=args.instances,
        rng_seed=args.seed,
    )

    print(" ".join(f"{c:>16}" for c in COLUMNS))
    for row in rows:
        print(
            f"{row['degree']:>16} {row['n']:>16} {row['instances']:>16} "
            f"{row['mean_conductance']:>16.6g} {row['mean_combined']:>16.6g} "
            f"{row['mean_ratio']:>16.6g}"
        )

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
