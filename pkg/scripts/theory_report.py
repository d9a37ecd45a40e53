#!/usr/bin/env python3
"""Produce the constrained-mode theory report.

Runs the stepper with the per-step probe bound h <= ||grad||/(L cot(theta))
on quadratics with known L, then checks the guaranteed per-step decrease
and both Wolfe conditions. The decrease bound and the c1 = 1/(2L)
sufficient-decrease condition must hold on every step; the curvature
condition is only measured.
"""

import argparse
import json

from dycent.harness import run_theory_suite


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/theory", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    report = run_theory_suite(seed=args.seed, out_dir=args.out)
    print(json.dumps({k: v for k, v in report.items() if k != "files"}, indent=2, sort_keys=True))
    print(f"report: {report['files']['report_json']}")


if __name__ == "__main__":
    main()
