"""Core network data types shared across clustering, selection and simulation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Protocol(enum.Enum):
    EERPMS = "EERPMS"
    RLEACH = "RLEACH"
    CRPFCM = "CRPFCM"

    def __str__(self) -> str:  # friendly in CLI output and file names
        return self.value


@dataclass
class Node:
    """One sensor. Position is fixed (sink at the origin); energy depletes."""

    id: int
    x: float
    y: float
    distance_to_bs: float
    angle: float                     # radians in [0, 2*pi)
    energy_initial: float
    energy_residual: float
    alive: bool = True
    role: str = "member"             # "member" or "head"


@dataclass
class Cluster:
    member_ids: list[int] = field(default_factory=list)
    head_id: int | None = None


@dataclass
class ClusterAssignment:
    """Partition of the alive nodes into clusters, one optional head each."""

    clusters: list[Cluster]
    round_created: int = 0

    def non_empty(self) -> list[Cluster]:
        return [c for c in self.clusters if c.member_ids]

    def member_total(self) -> int:
        return sum(len(c.member_ids) for c in self.clusters)
