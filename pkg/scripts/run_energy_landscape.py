#!/usr/bin/env python3
"""Energy landscape over (cluster count, head distance): the analytic
closed form on a fine grid and the forced-placement simulation on the
coarse grid, with both argmin cells printed.
"""

import argparse
from pathlib import Path

from eerpms import (
    AreaSpec,
    NetworkConfig,
    analytic_energy_grid,
    grid_argmin,
    simulated_energy_grid,
)
from eerpms.experiments import write_landscape_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/landscape", type=Path)
    parser.add_argument("--seeds", default=10, type=int)
    parser.add_argument("--nodes", default=100, type=int)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    config = NetworkConfig(node_count=args.nodes)
    area = AreaSpec(config.radius_m, config.node_count)
    k_values = range(1, 31)

    analytic = analytic_energy_grid(area, config.radio, k_values,
                                    [round(0.1 * i, 1) for i in range(1501)])
    write_landscape_csv(args.out / "landscape_analytic.csv", analytic)
    k, d, e = grid_argmin(analytic)
    print(f"analytic argmin:  K={k:2d} d={d:5.1f} m energy={e:.6f} J")

    simulated = simulated_energy_grid(area, config.radio, k_values,
                                      [10.0 * i for i in range(16)],
                                      range(1, args.seeds + 1))
    write_landscape_csv(args.out / "landscape_simulated.csv", simulated)
    k, d, e = grid_argmin(simulated)
    print(f"simulated argmin: K={k:2d} d={d:5.1f} m energy={e:.6f} J "
          f"({args.seeds} seeds)")


if __name__ == "__main__":
    main()
