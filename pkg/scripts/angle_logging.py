#!/usr/bin/env python3
"""Log the per-step probe angle on the two-moons MLP run.

Writes the trajectory CSV (theta_deg column in degrees, one row per
minibatch step) plus a JSON summary with the median angle over epochs
10..50 — the band where the step-size cotangent is stable.
"""

import argparse
import json

from dycent.harness import run_angle_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/angles", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--epochs", type=int, default=60)
    args = parser.parse_args()

    summary = run_angle_experiment(seed=args.seed, out_dir=args.out, epochs=args.epochs)
    print(json.dumps(summary["angle_band"], indent=2, sort_keys=True))
    print(f"trajectory: {summary['files']['trajectory_csv']}")
    print(f"final train accuracy: {summary['final_train_accuracy']}")


if __name__ == "__main__":
    main()
