"""Trajectory dissimilarity measures.

A trajectory of n latencies is treated as the point sequence
(0, u0), (1, u1), ... (n-1, u_{n-1}).  The one-way distance from t1 to t2 is
the mean, over points of t1, of each point's minimum Euclidean distance to
the points of t2; the symmetric dissimilarity is the maximum of the two
one-way distances.  Canberra distance over aligned latencies is provided as
a comparison baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

import numpy as np

from .errors import EmptyTrajectory, LengthMismatch, UnknownTid
from .events import Trajectory


class Metric(str, Enum):
    HAUSDORFF = "hausdorff"
    CANBERRA = "canberra"


def point_to_trajectory(index: int, latency: float, t: Trajectory) -> float:
    """Minimum Euclidean distance from the point (index, latency) to t."""
    if not t.latencies:
        raise EmptyTrajectory(t.tid)
    return min(math.hypot(index - j, latency - u)
               for j, u in enumerate(t.latencies))


def owd(t1: Trajectory, t2: Trajectory) -> float:
    """One-way distance from t1 to t2 (not symmetric)."""
    if not t1.latencies or not t2.latencies:
        raise EmptyTrajectory(t1.tid if not t1.latencies else t2.tid)
    a = _points(t1)
    b = _points(t2)
    # pairwise point distances, min over t2 per point of t1, then mean
    diff = a[:, None, :] - b[None, :, :]
    d = np.sqrt((diff ** 2).sum(axis=2))
    return float(d.min(axis=1).mean())


def dist(t1: Trajectory, t2: Trajectory) -> float:
    """Symmetric trajectory dissimilarity: max of the two one-way distances."""
    return max(owd(t1, t2), owd(t2, t1))


def canberra(t1: Trajectory, t2: Trajectory) -> float:
    """Canberra distance over aligned latencies; requires equal lengths."""
    if not t1.latencies or not t2.latencies:
        raise EmptyTrajectory(t1.tid if not t1.latencies else t2.tid)
    if len(t1) != len(t2):
        raise LengthMismatch(f"{len(t1)} vs {len(t2)}")
    total = 0.0
    for a, b in zip(t1.latencies, t2.latencies):
        denom = abs(a) + abs(b)
        if denom > 0:
            total += abs(a - b) / denom
    return total


def _points(t: Trajectory) -> np.ndarray:
    return np.column_stack([np.arange(len(t), dtype=float),
                            np.asarray(t.latencies, dtype=float)])


@dataclass(frozen=True)
class DissimilarityMatrix:
    ids: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def index_of(self, tid: str) -> int:
        try:
            return self.ids.index(tid)
        except ValueError:
            raise UnknownTid(tid) from None

    def get(self, a: str, b: str) -> float:
        return self.values[self.index_of(a)][self.index_of(b)]

    def to_table(self, precision: int = 2) -> str:
        """Human-readable table, values rounded for display."""
        header = "\t".join(["tid", *self.ids])
        rows = [header]
        for tid, row in zip(self.ids, self.values):
            cells = [f"{v:.{precision}f}" for v in row]
            rows.append("\t".join([tid, *cells]))
        return "\n".join(rows)

    def to_record(self) -> dict:
        """Machine-readable export at full precision."""
        return {"ids": list(self.ids),
                "values": [list(row) for row in self.values]}


def dissimilarity_matrix(trajs: Sequence[Trajectory],
                         metric: Metric = Metric.HAUSDORFF) -> DissimilarityMatrix:
    """Full symmetric pairwise matrix over a trajectory set."""
    if not trajs:
        raise EmptyTrajectory("no trajectories")
    pairwise = dist if metric is Metric.HAUSDORFF else canberra
    n = len(trajs)
    values: List[List[float]] = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = pairwise(trajs[i], trajs[j])
            values[i][j] = d
            values[j][i] = d
    return DissimilarityMatrix(tuple(t.tid for t in trajs),
                               tuple(tuple(row) for row in values))
