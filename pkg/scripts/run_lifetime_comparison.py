#!/usr/bin/env python3
"""Lifetime comparison of EERPMS, RLEACH and CRPFCM over a seed batch.

Writes per-round CSVs plus summary.csv / improvements.csv and prints the
aggregated lifetime table.
"""

import argparse
import csv
from pathlib import Path

from eerpms import ExperimentSpec, NetworkConfig, Protocol, run_experiment


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/lifetime", type=Path)
    parser.add_argument("--seeds", default=20, type=int)
    parser.add_argument("--nodes", default=100, type=int)
    args = parser.parse_args()

    spec = ExperimentSpec(
        base=NetworkConfig(node_count=args.nodes),
        protocols=list(Protocol),
        seeds=list(range(1, args.seeds + 1)),
        output_dir=args.out,
    )
    paths = run_experiment(spec)
    print(f"{len(paths)} files written to {args.out}")

    with open(args.out / "summary.csv") as fh:
        for row in csv.DictReader(fh):
            print(f"{row['protocol']:>8}: FDN {float(row['fdn_mean']):7.1f} "
                  f"± {float(row['fdn_sd']):6.1f}   HDN {float(row['hdn_mean']):7.1f} "
                  f"± {float(row['hdn_sd']):6.1f}   LDN {float(row['ldn_mean']):7.1f} "
                  f"± {float(row['ldn_sd']):6.1f}")


if __name__ == "__main__":
    main()
