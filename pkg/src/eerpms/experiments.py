"""Experiment orchestration: seed/parameter sweeps, CSV emission, summaries.

All output is data-only CSV with LF line endings, '.' decimal separator and
a fixed, versioned column order, so re-running an identical spec produces
byte-identical files. Rendering is left to external tooling.
"""

from __future__ import annotations

import configparser
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import ConfigError, NetworkConfig, parse_network_config
from .network import Protocol
from .radio import RadioParams, aggregation_energy, rx_energy, tx_energy
from .simulation import LifetimeSummary, RoundMetrics, deploy, run_simulation
from .theory import AreaSpec, predicted_round_energy

ROUND_CSV_HEADER = "round,alive,total_residual_j,ch_count,ch_energy_mean_j,ch_energy_var,deaths"
SUMMARY_CSV_HEADER = ("protocol,sweep,value,n_seeds,fdn_mean,fdn_sd,hdn_mean,hdn_sd,"
                      "ldn_mean,ldn_sd")
IMPROVEMENTS_CSV_HEADER = ("sweep,value,baseline,fdn_improvement_pct,"
                           "hdn_improvement_pct,ldn_improvement_pct")
LANDSCAPE_CSV_HEADER = "k,d_ch_m,energy_j"

SWEEP_AXES = ("none", "node_count", "omega1", "k_dch_grid")


@dataclass
class ExperimentSpec:
    base: NetworkConfig
    protocols: list[Protocol]
    seeds: list[int]
    output_dir: Path
    sweep_axis: str = "none"
    node_counts: list[int] = field(default_factory=list)
    omega1_values: list[float] = field(default_factory=list)
    k_values: list[int] = field(default_factory=list)
    d_values: list[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if self.sweep_axis not in SWEEP_AXES:
            raise ConfigError(f"sweep must be one of {SWEEP_AXES}")
        if self.sweep_axis == "node_count" and not self.node_counts:
            raise ConfigError("node_count sweep needs a non-empty node_counts list")
        if self.sweep_axis == "omega1" and not self.omega1_values:
            raise ConfigError("omega1 sweep needs a non-empty omega1_values list")
        if self.sweep_axis == "k_dch_grid" and not (self.k_values and self.d_values):
            raise ConfigError("k_dch_grid sweep needs k_values and d_values")
        if self.sweep_axis != "k_dch_grid" and not self.protocols:
            raise ConfigError("at least one protocol is required")


def _parse_list(raw: str, cast):
    items = [s.strip() for s in raw.replace(",", " ").split()]
    return [cast(s) for s in items if s]


def load_experiment_spec(path: str | Path) -> ExperimentSpec:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"experiment spec not found: {path}")
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        cp.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"malformed spec file {path}: {exc}") from exc
    if not cp.has_section("experiment"):
        raise ConfigError("spec file needs an [experiment] section")

    exp = dict(cp.items("experiment"))
    known = {"protocols", "seeds", "sweep", "node_counts", "omega1_values",
             "k_values", "d_values", "output_dir"}
    unknown = set(exp) - known
    if unknown:
        raise ConfigError(f"unknown keys in [experiment]: {sorted(unknown)}")

    base_cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    for section in cp.sections():
        if section == "experiment":
            continue
        base_cp.add_section(section)
        for key, value in cp.items(section):
            base_cp.set(section, key, value)
    base = parse_network_config(base_cp)

    def parse_protocol(raw: str) -> Protocol:
        try:
            return Protocol[raw.upper()]
        except KeyError as exc:
            raise ConfigError(f"unknown protocol {raw!r}") from exc

    try:
        return ExperimentSpec(
            base=base,
            protocols=_parse_list(exp.get("protocols", "EERPMS"), parse_protocol),
            seeds=_parse_list(exp.get("seeds", "1"), int),
            output_dir=Path(exp.get("output_dir", "out")),
            sweep_axis=exp.get("sweep", "none").strip(),
            node_counts=_parse_list(exp.get("node_counts", ""), int),
            omega1_values=_parse_list(exp.get("omega1_values", ""), float),
            k_values=_parse_list(exp.get("k_values", ""), int),
            d_values=_parse_list(exp.get("d_values", ""), float),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# --- CSV emission -------------------------------------------------------------


def write_rounds_csv(path: Path, rounds: list[RoundMetrics]) -> None:
    lines = [ROUND_CSV_HEADER]
    for m in rounds:
        lines.append(
            f"{m.round_index},{m.alive_count},{m.total_residual_j!r},{m.ch_count},"
            f"{m.ch_energy_mean_j!r},{m.ch_energy_var!r},{len(m.dead_node_ids)}"
        )
    path.write_text("\n".join(lines) + "\n", newline="\n")


@dataclass(frozen=True)
class SummaryRow:
    protocol: Protocol
    sweep: str
    value: str
    n_seeds: int
    fdn_mean: float
    fdn_sd: float
    hdn_mean: float
    hdn_sd: float
    ldn_mean: float
    ldn_sd: float


def _mean_sd(values: list[float]) -> tuple[float, float]:
    mean = sum(values) / len(values)
    if len(values) < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
    return mean, math.sqrt(var)


def summarize_lifetime(cells: dict[tuple[Protocol, str], list[LifetimeSummary]],
                       sweep: str) -> tuple[list[SummaryRow], list[dict]]:
    """Per-cell mean/sd of the lifetime metrics plus EERPMS-vs-baseline
    improvement percentages, computed as (EERPMS - baseline) / baseline."""
    rows = []
    for (protocol, value), summaries in cells.items():
        stats = {}
        for metric in ("fdn_round", "hdn_round", "ldn_round"):
            observed = [float(getattr(s, metric)) for s in summaries
                        if getattr(s, metric) is not None]
            stats[metric] = _mean_sd(observed) if observed else (math.nan, math.nan)
        rows.append(SummaryRow(
            protocol=protocol, sweep=sweep, value=value, n_seeds=len(summaries),
            fdn_mean=stats["fdn_round"][0], fdn_sd=stats["fdn_round"][1],
            hdn_mean=stats["hdn_round"][0], hdn_sd=stats["hdn_round"][1],
            ldn_mean=stats["ldn_round"][0], ldn_sd=stats["ldn_round"][1],
        ))

    improvements = []
    by_value: dict[str, dict[Protocol, SummaryRow]] = {}
    for row in rows:
        by_value.setdefault(row.value, {})[row.protocol] = row
    for value, per_proto in by_value.items():
        if Protocol.EERPMS not in per_proto:
            continue
        ours = per_proto[Protocol.EERPMS]
        for proto, row in per_proto.items():
            if proto is Protocol.EERPMS:
                continue
            improvements.append({
                "sweep": sweep,
                "value": value,
                "baseline": proto.value,
                "fdn_improvement_pct": 100.0 * (ours.fdn_mean - row.fdn_mean) / row.fdn_mean,
                "hdn_improvement_pct": 100.0 * (ours.hdn_mean - row.hdn_mean) / row.hdn_mean,
                "ldn_improvement_pct": 100.0 * (ours.ldn_mean - row.ldn_mean) / row.ldn_mean,
            })
    return rows, improvements


def write_summary_csv(path: Path, rows: list[SummaryRow]) -> None:
    lines = [SUMMARY_CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.protocol.value},{r.sweep},{r.value},{r.n_seeds},{r.fdn_mean!r},"
            f"{r.fdn_sd!r},{r.hdn_mean!r},{r.hdn_sd!r},{r.ldn_mean!r},{r.ldn_sd!r}"
        )
    path.write_text("\n".join(lines) + "\n", newline="\n")


def write_improvements_csv(path: Path, improvements: list[dict]) -> None:
    lines = [IMPROVEMENTS_CSV_HEADER]
    for imp in improvements:
        lines.append(
            f"{imp['sweep']},{imp['value']},{imp['baseline']},"
            f"{imp['fdn_improvement_pct']!r},{imp['hdn_improvement_pct']!r},"
            f"{imp['ldn_improvement_pct']!r}"
        )
    path.write_text("\n".join(lines) + "\n", newline="\n")


def write_landscape_csv(path: Path, rows: list[tuple[int, float, float]]) -> None:
    lines = [LANDSCAPE_CSV_HEADER]
    for k, d, e in rows:
        lines.append(f"{k},{d!r},{e!r}")
    path.write_text("\n".join(lines) + "\n", newline="\n")


# --- energy landscape ---------------------------------------------------------


def analytic_energy_grid(area: AreaSpec, radio: RadioParams, k_values,
                         d_values) -> list[tuple[int, float, float]]:
    """Closed-form round energy over a (cluster count, head distance) grid."""
    return [(int(k), float(d), predicted_round_energy(area, radio, int(k), float(d)))
            for k in k_values for d in d_values]


def forced_round_energy(xs: np.ndarray, ys: np.ndarray, radio: RadioParams,
                        k: int, d_ch: float) -> float:
    """One round's energy with k equal angular sectors and each sector's head
    forced onto the bisector at distance `d_ch` from the sink.

    Costs mirror the idealized-cluster accounting that the closed form
    integrates: every member transmits to its sector's head position, the
    head receives one packet per other member, fuses the sector's readings
    and forwards a single packet to the sink. Empty sectors cost nothing.
    """
    bits = radio.packet_bits
    angles = np.mod(np.arctan2(ys, xs), 2.0 * math.pi)
    sector = np.minimum((angles * k / (2.0 * math.pi)).astype(np.int64), k - 1)
    bisector = (sector + 0.5) * (2.0 * math.pi / k)
    hx = d_ch * np.cos(bisector)
    hy = d_ch * np.sin(bisector)
    dist = np.hypot(xs - hx, ys - hy)
    d_th = math.sqrt(radio.e_fs / radio.e_mp)
    amp = np.where(dist <= d_th, radio.e_fs * dist ** 2, radio.e_mp * dist ** 4)
    total = float(np.sum(bits * radio.e_elec + bits * amp))
    counts = np.bincount(sector, minlength=k)
    for m in counts[counts > 0]:
        total += (int(m) - 1) * rx_energy(radio, bits)
        total += aggregation_energy(radio, bits, int(m))
        total += tx_energy(radio, bits, d_ch)
    return total


def simulated_energy_grid(area: AreaSpec, radio: RadioParams, k_values, d_values,
                          seeds) -> list[tuple[int, float, float]]:
    """Forced-placement round energy averaged over one deployment per seed."""
    deployments = []
    for seed in seeds:
        nodes = deploy(area, seed)
        deployments.append((np.array([n.x for n in nodes]),
                            np.array([n.y for n in nodes])))
    rows = []
    for k in k_values:
        for d in d_values:
            total = 0.0
            for xs, ys in deployments:
                total += forced_round_energy(xs, ys, radio, int(k), float(d))
            rows.append((int(k), float(d), total / len(deployments)))
    return rows


def grid_argmin(rows: list[tuple[int, float, float]]) -> tuple[int, float, float]:
    return min(rows, key=lambda row: row[2])


# --- experiment runner --------------------------------------------------------


def _cell_configs(spec: ExperimentSpec) -> list[tuple[str, NetworkConfig]]:
    if spec.sweep_axis == "none":
        return [("base", spec.base)]
    if spec.sweep_axis == "node_count":
        return [(f"n{n}", spec.base.with_overrides(node_count=n))
                for n in spec.node_counts]
    if spec.sweep_axis == "omega1":
        return [(f"w{w:g}", spec.base.with_overrides(omega1=w, omega2=1.0 - w))
                for w in spec.omega1_values]
    raise ConfigError(f"no per-run cells for sweep {spec.sweep_axis!r}")


def _check_writable(directory: Path) -> None:
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {directory}: {exc}") from exc
    if not os.access(directory, os.W_OK):
        raise ConfigError(f"output directory is not writable: {directory}")


def run_experiment(spec: ExperimentSpec) -> list[Path]:
    """Run every (protocol, sweep point, seed) cell and write all CSVs.

    Returns the list of written paths. Validation happens before any
    simulation starts.
    """
    _check_writable(spec.output_dir)
    written: list[Path] = []

    if spec.sweep_axis == "k_dch_grid":
        area = AreaSpec(spec.base.radius_m, spec.base.node_count)
        rows = simulated_energy_grid(area, spec.base.radio, spec.k_values,
                                     spec.d_values, spec.seeds)
        path = spec.output_dir / "landscape_simulated.csv"
        write_landscape_csv(path, rows)
        return [path]

    cells = _cell_configs(spec)
    lifetimes: dict[tuple[Protocol, str], list[LifetimeSummary]] = {}
    for protocol in spec.protocols:
        for label, config in cells:
            for seed in spec.seeds:
                run_config = config.with_overrides(protocol=protocol, seed=seed)
                result = run_simulation(run_config)
                path = spec.output_dir / f"rounds_{protocol.value}_{label}_seed{seed}.csv"
                write_rounds_csv(path, result.rounds)
                written.append(path)
                lifetimes.setdefault((protocol, label), []).append(result.lifetime)

    rows, improvements = summarize_lifetime(lifetimes, spec.sweep_axis)
    summary_path = spec.output_dir / "summary.csv"
    write_summary_csv(summary_path, rows)
    written.append(summary_path)
    if improvements:
        imp_path = spec.output_dir / "improvements.csv"
        write_improvements_csv(imp_path, improvements)
        written.append(imp_path)
    return written
