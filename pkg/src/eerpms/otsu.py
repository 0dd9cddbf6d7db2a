"""Angle-histogram clustering machinery.

Nodes are binned by their angle around the sink; a set of K-1 integer
thresholds cuts the bins into K angular segments. The composite objective
rewards large between-segment angle variance (the classical multi-threshold
between-class criterion) and even segment populations. An exhaustive search
over all threshold sets serves as the ground-truth oracle for the
metaheuristic optimizer.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .network import Cluster, ClusterAssignment, Node

#: Maximum number of threshold combinations the exhaustive search will visit.
EXHAUSTIVE_CAP = 10_000_000

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ObjectiveWeights:
    alpha1: float = 0.5   # weight of the angle-variance term
    alpha2: float = 0.5   # weight of the population-balance term

    def __post_init__(self) -> None:
        if not (0.0 <= self.alpha1 <= 1.0 and 0.0 <= self.alpha2 <= 1.0):
            raise ValueError("weights must lie in [0, 1]")
        if abs(self.alpha1 + self.alpha2 - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")


@dataclass(frozen=True)
class ThresholdSet:
    """K-1 strictly increasing integer bin boundaries defining K segments.

    Segment j covers bins [t_{j-1}, t_j) with t_0 = 0 and t_K = bin count;
    there is no wrap-around across angle zero.
    """

    thresholds: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if len(self.thresholds) != self.k - 1:
            raise ValueError("a k-way split needs exactly k-1 thresholds")
        for a, b in itertools.pairwise(self.thresholds):
            if b <= a:
                raise ValueError("thresholds must be strictly increasing")
        if self.thresholds and self.thresholds[0] < 1:
            raise ValueError("thresholds must be at least 1")

    def validate_for(self, bin_count: int) -> None:
        if self.k > bin_count:
            raise ValueError("more segments than bins")
        if self.thresholds and self.thresholds[-1] > bin_count - 1:
            raise ValueError("threshold beyond the last bin")


class AngleHistogram:
    """Counts of node angles over `bin_count` equal bins of [0, 2*pi).

    Prefix sums of the bin probabilities, index-weighted probabilities and
    raw counts are precomputed so that any segment statistic is O(1).
    """

    def __init__(self, counts) -> None:
        counts = np.asarray(counts, dtype=np.int64)
        if counts.ndim != 1 or counts.size == 0:
            raise ValueError("counts must be a non-empty 1-D sequence")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        total = int(counts.sum())
        if total == 0:
            raise ValueError("histogram is empty")
        self.counts = counts
        self.bin_count = int(counts.size)
        self.total = total
        p = counts / total
        idx = np.arange(self.bin_count)
        self.p = p
        self.cum_p = np.concatenate(([0.0], np.cumsum(p)))
        self.cum_ip = np.concatenate(([0.0], np.cumsum(idx * p)))
        self.cum_counts = np.concatenate(([0], np.cumsum(counts)))
        self.mean = float(self.cum_ip[-1])
        self.variance = float(np.sum(p * (idx - self.mean) ** 2))

    def __repr__(self) -> str:
        return f"AngleHistogram(bins={self.bin_count}, total={self.total})"


def angle_to_bin(angle: float, bin_count: int) -> int:
    """Bin index of an angle in [0, 2*pi); the top edge folds into the last bin."""
    if not (0.0 <= angle < _TWO_PI):
        raise ValueError("angle must lie in [0, 2*pi)")
    return min(int(angle * bin_count / _TWO_PI), bin_count - 1)


def build_histogram(angles, bin_count: int) -> AngleHistogram:
    """Histogram of node angles over `bin_count` equal bins."""
    if bin_count < 1:
        raise ValueError("bin_count must be at least 1")
    angles = np.asarray(list(angles), dtype=float)
    if angles.size == 0:
        raise ValueError("at least one angle is required")
    if ((angles < 0.0) | (angles >= _TWO_PI)).any():
        raise ValueError("angles must lie in [0, 2*pi)")
    bins = np.minimum((angles * bin_count / _TWO_PI).astype(np.int64), bin_count - 1)
    return AngleHistogram(np.bincount(bins, minlength=bin_count))


def _bounds(t: ThresholdSet, bin_count: int) -> tuple[int, ...]:
    return (0, *t.thresholds, bin_count)


def segment_stats(h: AngleHistogram, t: ThresholdSet) -> list[tuple[float, float, int]]:
    """Per-segment (probability mass, mean bin index, node count).

    The mean of an empty segment is 0 by convention.
    """
    t.validate_for(h.bin_count)
    out = []
    bounds = _bounds(t, h.bin_count)
    for a, b in itertools.pairwise(bounds):
        w = float(h.cum_p[b] - h.cum_p[a])
        s = float(h.cum_ip[b] - h.cum_ip[a])
        nc = int(h.cum_counts[b] - h.cum_counts[a])
        out.append((w, s / w if w > 0 else 0.0, nc))
    return out


def f1_angle_variance(h: AngleHistogram, t: ThresholdSet) -> float:
    """Between-segment variance of mean bin indices, weighted by mass."""
    stats = segment_stats(h, t)
    u_t = sum(w * u for w, u, _ in stats)
    return sum(w * (u - u_t) ** 2 for w, u, _ in stats)


def f2_count_variance(h: AngleHistogram, t: ThresholdSet) -> float:
    """Mean squared deviation of segment populations from the even split,
    normalized by the node total. Zero means perfectly balanced segments."""
    stats = segment_stats(h, t)
    target = h.total / t.k
    return sum((nc - target) ** 2 for _, _, nc in stats) / h.total


def objective_f1(h: AngleHistogram, t: ThresholdSet, w: ObjectiveWeights) -> float:
    """Composite clustering objective in [0, 1]; higher is better.

    The angle term is the between-segment variance divided by the total
    histogram variance (0 when the histogram is degenerate); the balance
    term is 1/(1 + f2) so that maximizing it minimizes the population
    variance.
    """
    f1 = f1_angle_variance(h, t)
    f2 = f2_count_variance(h, t)
    f1_norm = f1 / h.variance if h.variance > 0 else 0.0
    return w.alpha1 * f1_norm + w.alpha2 * (1.0 / (1.0 + f2))


def evaluate_threshold_sets(h: AngleHistogram, tmat: np.ndarray,
                            w: ObjectiveWeights) -> np.ndarray:
    """Vectorized objective over a (batch, k-1) matrix of sorted thresholds."""
    tmat = np.asarray(tmat, dtype=np.int64)
    if tmat.ndim != 2:
        raise ValueError("expected a 2-D threshold matrix")
    batch, dim = tmat.shape
    k = dim + 1
    bounds = np.empty((batch, k + 1), dtype=np.int64)
    bounds[:, 0] = 0
    bounds[:, -1] = h.bin_count
    if dim:
        bounds[:, 1:-1] = tmat
    mass = h.cum_p[bounds[:, 1:]] - h.cum_p[bounds[:, :-1]]
    weighted = h.cum_ip[bounds[:, 1:]] - h.cum_ip[bounds[:, :-1]]
    counts = h.cum_counts[bounds[:, 1:]] - h.cum_counts[bounds[:, :-1]]
    u = np.divide(weighted, mass, out=np.zeros_like(weighted), where=mass > 0)
    f1 = np.sum(mass * (u - h.mean) ** 2, axis=1)
    f2 = np.sum((counts - h.total / k) ** 2, axis=1) / h.total
    f1_norm = f1 / h.variance if h.variance > 0 else np.zeros(batch)
    return w.alpha1 * f1_norm + w.alpha2 * (1.0 / (1.0 + f2))


def exhaustive_best_threshold(h: AngleHistogram, k: int,
                              w: ObjectiveWeights) -> tuple[ThresholdSet, float]:
    """Global maximizer of the composite objective by full enumeration.

    Ties resolve to the lexicographically smallest threshold set. Guarded
    against combinatorial blowup; intended for oracle use at small bin
    counts.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > h.bin_count:
        raise ValueError("more segments than bins")
    if k == 1:
        t = ThresholdSet((), 1)
        return t, objective_f1(h, t, w)
    n_combos = math.comb(h.bin_count - 1, k - 1)
    if n_combos > EXHAUSTIVE_CAP:
        raise ValueError(
            f"{n_combos} candidate threshold sets exceed the cap of {EXHAUSTIVE_CAP}"
        )
    best_val = -math.inf
    best_t: tuple[int, ...] | None = None
    combos = itertools.combinations(range(1, h.bin_count), k - 1)
    while True:
        chunk = list(itertools.islice(combos, 65536))
        if not chunk:
            break
        vals = evaluate_threshold_sets(h, np.array(chunk, dtype=np.int64), w)
        i = int(np.argmax(vals))
        # strict improvement keeps the first (lexicographically smallest) maximizer
        if vals[i] > best_val:
            best_val = float(vals[i])
            best_t = chunk[i]
    assert best_t is not None
    return ThresholdSet(best_t, k), best_val


def materialize_clusters(nodes: list[Node], t: ThresholdSet,
                         bin_count: int) -> ClusterAssignment:
    """Assign each node to the angular segment containing its angle bin.

    Clusters come back ordered by segment; empty segments stay as empty
    clusters. Heads are left unset.
    """
    t.validate_for(bin_count)
    for node in nodes:
        if not node.alive:
            raise ValueError("cannot cluster dead nodes")
    clusters = [Cluster() for _ in range(t.k)]
    thresholds = np.asarray(t.thresholds, dtype=np.int64)
    for node in nodes:
        b = angle_to_bin(node.angle, bin_count)
        seg = int(np.searchsorted(thresholds, b, side="right"))
        clusters[seg].member_ids.append(node.id)
    return ClusterAssignment(clusters=clusters)
