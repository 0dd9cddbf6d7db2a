#!/usr/bin/env python3
"""Sweep the head-election energy weight and report the lifetime trends:
first deaths happen later and the last death happens earlier as the weight
grows.
"""

import argparse
import csv
from pathlib import Path

from eerpms import ExperimentSpec, NetworkConfig, Protocol, run_experiment


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/omega1", type=Path)
    parser.add_argument("--seeds", default=10, type=int)
    parser.add_argument("--values", default="0,0.25,0.5,0.75,1.0")
    args = parser.parse_args()

    spec = ExperimentSpec(
        base=NetworkConfig(),
        protocols=[Protocol.EERPMS],
        seeds=list(range(1, args.seeds + 1)),
        output_dir=args.out,
        sweep_axis="omega1",
        omega1_values=[float(v) for v in args.values.split(",")],
    )
    run_experiment(spec)
    with open(args.out / "summary.csv") as fh:
        for row in csv.DictReader(fh):
            print(f"omega1={row['value'][1:]:>5}: mean FDN {float(row['fdn_mean']):7.1f}"
                  f"   mean LDN {float(row['ldn_mean']):7.1f}")


if __name__ == "__main__":
    main()
