#!/usr/bin/env python3
"""Run the standard scaling sweeps and write their points tables and reports.

Four sweeps: hypercubes under PUSH-PULL, random 8-regular graphs under PULL
from a dominating set, and the fast/slow pair of two cliques joined at a
shared vertex versus joined by a single bridge edge. Each sweep writes
<name>_points.csv and <name>_report.json into the output directory and prints
one summary line.
"""

import argparse
import os
import sys

from rumorspread import ExperimentConfig, run_experiment, write_points_csv, write_report_json


def sweep_configs(quick: bool, trials: int, seed: int):
    d_range = range(6, 10) if quick else range(6, 13)
    k_range = range(8, 11) if quick else range(8, 13)
    ms = (32, 64, 128) if quick else (32, 64, 128, 256, 512)
    yield "hypercube", ExperimentConfig(
        family="hypercube",
        sweep=tuple({"d": d} for d in d_range),
        trials=trials,
        rng_seed=seed,
    )
    yield "regular_pull", ExperimentConfig(
        family="random_regular",
        sweep=tuple({"n": 2**k, "degree": 8} for k in k_range),
        variant="pull",
        informed="dominating",
        trials=trials,
        rng_seed=seed + 1,
    )
    yield "two_cliques", ExperimentConfig(
        family="two_cliques",
        sweep=tuple({"m": m} for m in ms),
        trials=trials,
        rng_seed=seed + 2,
    )
    yield "dumbbell", ExperimentConfig(
        family="dumbbell",
        sweep=tuple({"m": m} for m in ms),
        trials=trials,
        bound_model="linear_n",
        max_rounds_factor=16,
        rng_seed=seed + 3,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="scaling_out")
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--quick", action="store_true", help="smaller sweeps for a fast look"
    )
    args = parser.parse_args(argv)

    os.makedirs(args.out_dir, exist_ok=True)
    for name, cfg in sweep_configs(args.quick, args.trials, args.seed):
        report, _ = run_experiment(cfg)
        write_points_csv(report, os.path.join(args.out_dir, f"{name}_points.csv"))
        write_report_json(report, os.path.join(args.out_dir, f"{name}_report.json"))
        print(
            f"{name}: model={report.bound_model} points={len(report.points)} "
            f"c_hat={report.c_hat:.3g} drift={report.drift:.3g} "
            f"within_factor_2={report.passes()}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
