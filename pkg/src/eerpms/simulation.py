"""Round-based network simulation with pluggable clustering protocols.

One round = (re-)clustering when triggered, head election, data
transmission, energy accounting. The engine owns a single seeded RNG, so a
(config, seed) pair fully determines every metric stream.

Death semantics: all round costs are computed from the start-of-round
structure, then deducted with clamping at zero. A node that cannot afford
its full cost spends what it has (the packet is lost) and is dead from the
next round on. This keeps the energy-conservation identity exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bat import optimize_thresholds
from .config import NetworkConfig
from .fcm import fuzzy_c_means
from .network import Cluster, ClusterAssignment, Node, Protocol
from .otsu import ObjectiveWeights, ThresholdSet, build_histogram, materialize_clusters
from .radio import aggregation_energy, rx_energy, tx_energy
from .selection import SelectionWeights, select_cluster_heads
from .theory import AreaSpec, optimal_ch_distance, optimal_cluster_count

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RoundMetrics:
    round_index: int
    alive_count: int
    total_residual_j: float
    spent_j: float
    ch_count: int
    per_ch_energy_j: tuple[float, ...]
    member_counts: tuple[int, ...]
    dead_node_ids: tuple[int, ...]

    @property
    def ch_energy_mean_j(self) -> float:
        if not self.per_ch_energy_j:
            return 0.0
        return sum(self.per_ch_energy_j) / len(self.per_ch_energy_j)

    @property
    def ch_energy_var(self) -> float:
        if len(self.per_ch_energy_j) < 2:
            return 0.0
        mean = self.ch_energy_mean_j
        return sum((e - mean) ** 2 for e in self.per_ch_energy_j) / len(self.per_ch_energy_j)

    @property
    def member_count_var(self) -> float:
        if len(self.member_counts) < 1:
            return 0.0
        mean = sum(self.member_counts) / len(self.member_counts)
        return sum((c - mean) ** 2 for c in self.member_counts) / len(self.member_counts)


@dataclass(frozen=True)
class LifetimeSummary:
    fdn_round: int | None      # first death
    hdn_round: int | None      # dead count first reaches ceil(N/2)
    ldn_round: int | None      # last death
    rounds_completed: int


@dataclass
class SimulationResult:
    config: NetworkConfig
    rounds: list[RoundMetrics]
    lifetime: LifetimeSummary


def deploy(area: AreaSpec, seed, initial_energy_j: float = 0.5) -> list[Node]:
    """Place `node_count` nodes i.i.d. uniform over the disk (area-uniform:
    r = R*sqrt(u), theta = 2*pi*v). Deterministic per seed."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    r = area.radius_m * np.sqrt(rng.random(area.node_count))
    theta = _TWO_PI * rng.random(area.node_count)
    nodes = []
    for i in range(area.node_count):
        nodes.append(Node(
            id=i,
            x=float(r[i] * math.cos(theta[i])),
            y=float(r[i] * math.sin(theta[i])),
            distance_to_bs=float(r[i]),
            angle=float(theta[i]),
            energy_initial=initial_energy_j,
            energy_residual=initial_energy_j,
        ))
    return nodes


class Simulation:
    """Simulation state plus the per-protocol round logic."""

    def __init__(self, config: NetworkConfig) -> None:
        self.config = config
        self.area = AreaSpec(config.radius_m, config.node_count)
        self.rng = np.random.default_rng(config.seed)
        self.nodes = deploy(self.area, self.rng, config.initial_energy_j)
        self.round_index = 0
        self.assignment: ClusterAssignment | None = None
        self.current_k = 0
        self.last_clustered_alive: int | None = None
        self.clustering_events = 0
        # pairwise distances are static; python floats keep the hot loop cheap
        xs = np.array([n.x for n in self.nodes])
        ys = np.array([n.y for n in self.nodes])
        self._dist = np.hypot(xs[:, None] - xs[None, :], ys[:, None] - ys[None, :]).tolist()
        self._dist_bs = [n.distance_to_bs for n in self.nodes]
        p_target = config.k_clusters if config.k_clusters is not None \
            else optimal_cluster_count(self.area)
        self._election_p = min(1.0, p_target / config.node_count)
        self._epoch_len = max(1, int(1.0 / self._election_p))
        self._eligible = [True] * config.node_count

    # -- helpers ---------------------------------------------------------

    def alive_nodes(self) -> list[Node]:
        return [n for n in self.nodes if n.alive]

    def _cluster_count(self, alive: int) -> int:
        if self.config.k_clusters is not None:
            k = self.config.k_clusters
        else:
            k = optimal_cluster_count(AreaSpec(self.config.radius_m, max(1, alive)))
        return max(1, min(k, self.config.bin_count))

    def _ring_radius(self, alive: int, k: int) -> float:
        if self.config.ring_radius_m is not None:
            return self.config.ring_radius_m
        return optimal_ch_distance(AreaSpec(self.config.radius_m, max(1, alive)), k)

    def _select_heads(self, assignment: ClusterAssignment) -> ClusterAssignment:
        alive = sum(1 for n in self.nodes if n.alive)
        weights = SelectionWeights(
            omega1=self.config.omega1,
            omega2=self.config.omega2,
            ring_radius_m=self._ring_radius(alive, max(1, self.current_k)),
        )
        return select_cluster_heads(assignment, self.nodes, weights)

    def _transmit(self, clusters: list[Cluster], direct_ids: list[int]) -> RoundMetrics:
        """Charge the round's costs and emit metrics.

        `clusters` carry head-led traffic; nodes in `direct_ids` send
        straight to the sink (used when an election produces no heads).
        """
        radio = self.config.radio
        bits = radio.packet_bits
        cost = [0.0] * len(self.nodes)
        head_ids: list[int] = []
        member_counts: list[int] = []

        for cluster in clusters:
            if not cluster.member_ids:
                continue
            head = cluster.head_id
            assert head is not None
            head_ids.append(head)
            member_counts.append(len(cluster.member_ids))
            for nid in cluster.member_ids:
                if nid == head:
                    continue
                cost[nid] += tx_energy(radio, bits, self._dist[nid][head])
                cost[head] += rx_energy(radio, bits)
            cost[head] += aggregation_energy(radio, bits, len(cluster.member_ids))
            cost[head] += tx_energy(radio, bits, self._dist_bs[head])

        for nid in direct_ids:
            cost[nid] += tx_energy(radio, bits, self._dist_bs[nid])

        spent_total = 0.0
        dead: list[int] = []
        spent = [0.0] * len(self.nodes)
        for node in self.nodes:
            if not node.alive or cost[node.id] == 0.0:
                continue
            before = node.energy_residual
            after = max(0.0, before - cost[node.id])
            node.energy_residual = after
            spent[node.id] = before - after  # exact by construction
            spent_total += spent[node.id]
            if after <= 0.0:
                node.alive = False
                node.role = "member"
                dead.append(node.id)

        head_set = set(head_ids)
        for node in self.nodes:
            if node.alive:
                node.role = "head" if node.id in head_set else "member"

        return RoundMetrics(
            round_index=self.round_index,
            alive_count=sum(1 for n in self.nodes if n.alive),
            total_residual_j=math.fsum(n.energy_residual for n in self.nodes),
            spent_j=spent_total,
            ch_count=len(head_ids),
            per_ch_energy_j=tuple(spent[h] for h in head_ids),
            member_counts=tuple(member_counts),
            dead_node_ids=tuple(dead),
        )

    # -- protocol rounds -------------------------------------------------

    def step(self) -> RoundMetrics:
        alive = self.alive_nodes()
        if not alive:
            raise RuntimeError("no alive nodes left to simulate")
        self.round_index += 1
        if self.config.protocol is Protocol.EERPMS:
            return self._round_eerpms(alive)
        if self.config.protocol is Protocol.RLEACH:
            return self._round_rleach(alive)
        return self._round_crpfcm(alive)

    def _needs_reclustering(self, alive: list[Node]) -> bool:
        return self.assignment is None or len(alive) != self.last_clustered_alive

    def _round_eerpms(self, alive: list[Node]) -> RoundMetrics:
        if self._needs_reclustering(alive):
            k = self._cluster_count(len(alive))
            hist = build_histogram([n.angle for n in alive], self.config.bin_count)
            weights = ObjectiveWeights(self.config.alpha1, self.config.alpha2)
            if k == 1:
                tset = ThresholdSet((), 1)
            else:
                bat = replace(self.config.bat, seed=int(self.rng.integers(0, 2 ** 63)))
                tset, _ = optimize_thresholds(hist, k, weights, bat)
            self.assignment = materialize_clusters(alive, tset, self.config.bin_count)
            self.assignment.round_created = self.round_index
            self.current_k = k
            self.last_clustered_alive = len(alive)
            self.clustering_events += 1
        self.assignment = self._select_heads(self.assignment)
        return self._transmit(self.assignment.clusters, [])

    def _round_crpfcm(self, alive: list[Node]) -> RoundMetrics:
        if self._needs_reclustering(alive):
            k = self._cluster_count(len(alive))
            k_eff = min(k, len(alive))
            points = np.array([[n.x, n.y] for n in alive])
            labels, _ = fuzzy_c_means(points, k_eff, self.rng)
            clusters = [Cluster() for _ in range(k_eff)]
            for node, label in zip(alive, labels):
                clusters[int(label)].member_ids.append(node.id)
            self.assignment = ClusterAssignment(clusters=clusters,
                                                round_created=self.round_index)
            self.current_k = k
            self.last_clustered_alive = len(alive)
            self.clustering_events += 1
        self.assignment = self._select_heads(self.assignment)
        return self._transmit(self.assignment.clusters, [])

    def _round_rleach(self, alive: list[Node]) -> RoundMetrics:
        r = self.round_index - 1
        if r % self._epoch_len == 0:
            self._eligible = [True] * len(self.nodes)
        p = self._election_p
        threshold_base = p / (1.0 - p * (r % self._epoch_len))
        head_ids = []
        for node in alive:
            if not self._eligible[node.id]:
                continue
            threshold = threshold_base * (node.energy_residual / node.energy_initial)
            if self.rng.random() < threshold:
                head_ids.append(node.id)
                self._eligible[node.id] = False
        self.clustering_events += 1
        if not head_ids:
            self.assignment = ClusterAssignment(clusters=[],
                                                round_created=self.round_index)
            self.current_k = 0
            self.last_clustered_alive = len(alive)
            return self._transmit([], [n.id for n in alive])
        clusters = [Cluster(member_ids=[], head_id=h) for h in head_ids]
        for node in alive:
            best = 0
            best_d = self._dist[node.id][head_ids[0]]
            for j in range(1, len(head_ids)):
                d = self._dist[node.id][head_ids[j]]
                if d < best_d:
                    best, best_d = j, d
            clusters[best].member_ids.append(node.id)
        # a head with no other takers still forms its own singleton cluster
        self.assignment = ClusterAssignment(clusters=clusters,
                                            round_created=self.round_index)
        self.current_k = len(head_ids)
        self.last_clustered_alive = len(alive)
        return self._transmit(clusters, [])

    # -- full run --------------------------------------------------------

    def run(self) -> SimulationResult:
        metrics: list[RoundMetrics] = []
        n = self.config.node_count
        half = math.ceil(n / 2)
        fdn = hdn = ldn = None
        dead_total = 0
        while self.round_index < self.config.max_rounds and any(n_.alive for n_ in self.nodes):
            m = self.step()
            metrics.append(m)
            if m.dead_node_ids:
                dead_total += len(m.dead_node_ids)
                if fdn is None:
                    fdn = m.round_index
                if hdn is None and dead_total >= half:
                    hdn = m.round_index
                if ldn is None and dead_total == n:
                    ldn = m.round_index
        return SimulationResult(
            config=self.config,
            rounds=metrics,
            lifetime=LifetimeSummary(fdn_round=fdn, hdn_round=hdn, ldn_round=ldn,
                                     rounds_completed=self.round_index),
        )


def run_simulation(config: NetworkConfig) -> SimulationResult:
    return Simulation(config).run()
