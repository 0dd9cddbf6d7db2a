"""Per-cluster head election from residual energy and ring proximity.

Heads should sit close to the minimum-energy ring around the sink, but
rotating the role toward members with more residual energy keeps any single
node from burning out. The attribute score trades the two off.
"""

from __future__ import annotations

from dataclasses import dataclass

from .network import Cluster, ClusterAssignment, Node


@dataclass(frozen=True)
class SelectionWeights:
    omega1: float = 0.7        # residual-energy weight
    omega2: float = 0.3        # ring-proximity weight
    ring_radius_m: float = 90.0

    def __post_init__(self) -> None:
        if not (0.0 <= self.omega1 <= 1.0 and 0.0 <= self.omega2 <= 1.0):
            raise ValueError("weights must lie in [0, 1]")
        if abs(self.omega1 + self.omega2 - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        if self.ring_radius_m < 0:
            raise ValueError("ring_radius_m must be non-negative")


def distance_to_ring(node_bs_distance: float, ring_radius: float) -> float:
    """Radial distance from a node to the circle of the given radius."""
    if node_bs_distance < 0 or ring_radius < 0:
        raise ValueError("distances must be non-negative")
    return abs(node_bs_distance - ring_radius)


def attribute_score(node: Node, cluster_min_d: float, cluster_max_d: float,
                    w: SelectionWeights) -> float:
    """Head-election score in [0, 1]; higher is better.

    `cluster_min_d`/`cluster_max_d` are the smallest and largest ring
    distances among the cluster's members. When they coincide (singleton or
    equidistant cluster) every member is positionally optimal and the
    distance term is 1.
    """
    if not node.alive:
        raise ValueError("dead node cannot score")
    if cluster_min_d > cluster_max_d:
        raise ValueError("cluster_min_d must not exceed cluster_max_d")
    energy_term = node.energy_residual / node.energy_initial
    d = distance_to_ring(node.distance_to_bs, w.ring_radius_m)
    if cluster_max_d == cluster_min_d:
        distance_term = 1.0
    else:
        distance_term = (cluster_max_d - d) / (cluster_max_d - cluster_min_d)
    return w.omega1 * energy_term + w.omega2 * distance_term


def select_cluster_heads(assignment: ClusterAssignment, nodes: list[Node],
                         w: SelectionWeights) -> ClusterAssignment:
    """Elect the highest-scoring member of every non-empty cluster.

    Ties break toward the lowest node id. Empty clusters stay headless.
    """
    new_clusters = []
    for cluster in assignment.clusters:
        members = [nodes[i] for i in cluster.member_ids]
        for m in members:
            if not m.alive:
                raise ValueError("clusters must contain only alive nodes")
        if not members:
            new_clusters.append(Cluster(member_ids=[], head_id=None))
            continue
        ring_d = [distance_to_ring(m.distance_to_bs, w.ring_radius_m) for m in members]
        d_min, d_max = min(ring_d), max(ring_d)
        best_id = None
        best_score = -1.0
        for m in sorted(members, key=lambda n: n.id):
            score = attribute_score(m, d_min, d_max, w)
            if score > best_score:
                best_score = score
                best_id = m.id
        new_clusters.append(Cluster(member_ids=list(cluster.member_ids),
                                    head_id=best_id))
    return ClusterAssignment(clusters=new_clusters,
                             round_created=assignment.round_created)
