"""Threshold-based trajectory clustering with medoid representatives.

The routine runs in four stages: pairwise dissimilarity matrix, leader-style
initialization (first unclassified trajectory seeds a cluster and absorbs
everything within the threshold), medoid selection per cluster, then repeated
nearest-representative reassignment until the representative set stops
changing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import List, Sequence

from .distance import DissimilarityMatrix, Metric, dissimilarity_matrix
from .errors import UnknownTid
from .events import Trajectory


@dataclass(frozen=True)
class Cluster:
    members: tuple[str, ...]
    representative: str


@dataclass(frozen=True)
class Clustering:
    clusters: tuple[Cluster, ...]
    outliers: tuple[str, ...]
    iterations: int = 0
    converged: bool = True

    def member_map(self) -> dict[str, int]:
        out = {}
        for i, c in enumerate(self.clusters):
            for tid in c.members:
                out[tid] = i
        return out

    def representatives(self) -> tuple[str, ...]:
        return tuple(c.representative for c in self.clusters)


@dataclass(frozen=True)
class ClusteringConfig:
    threshold: float
    max_iterations: int = 100

    def __post_init__(self) -> None:
        if self.threshold < 0:
            raise ValueError("threshold must be >= 0")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")


def initialize_clusters(matrix: DissimilarityMatrix,
                        config: ClusteringConfig) -> Clustering:
    """Leader clustering in input order.

    Each cluster is seeded by the first not-yet-classified trajectory and
    absorbs every remaining unclassified trajectory within the threshold of
    the seed.  Every trajectory ends up in some cluster, so there are no
    outliers at this stage.  The seed stands in as representative until the
    medoid pass runs.
    """
    assigned: set[str] = set()
    clusters: List[Cluster] = []
    for i, tid in enumerate(matrix.ids):
        if tid in assigned:
            continue
        members = [tid]
        assigned.add(tid)
        for j in range(len(matrix.ids)):
            other = matrix.ids[j]
            if other in assigned:
                continue
            if matrix.values[i][j] <= config.threshold:
                members.append(other)
                assigned.add(other)
        clusters.append(Cluster(tuple(members), representative=tid))
    return Clustering(tuple(clusters), outliers=())


def representative(members: Sequence[str], matrix: DissimilarityMatrix) -> str:
    """Medoid: the member with minimum cumulative dissimilarity to the rest.

    Ties go to the member appearing earliest in `members`.
    """
    if not members:
        raise UnknownTid("empty member list")
    idx = [matrix.index_of(t) for t in members]
    best_tid = members[0]
    best_sum = float("inf")
    for t, i in zip(members, idx):
        s = sum(matrix.values[i][j] for j in idx)
        if s < best_sum:
            best_sum = s
            best_tid = t
    return best_tid


def recompute(matrix: DissimilarityMatrix, representatives: Sequence[str],
              config: ClusteringConfig) -> Clustering:
    """One reassignment pass against fixed representatives.

    Each trajectory joins the cluster of its nearest representative when
    that distance is within the threshold (ties to the earliest
    representative); otherwise it becomes an outlier for this pass.  Empty
    clusters are dropped and medoids are then recomputed.
    """
    rep_idx = [matrix.index_of(r) for r in representatives]
    buckets: List[List[str]] = [[] for _ in representatives]
    outliers: List[str] = []
    for i, tid in enumerate(matrix.ids):
        dists = [matrix.values[i][j] for j in rep_idx]
        k = min(range(len(dists)), key=lambda m: (dists[m], m))
        if dists[k] <= config.threshold:
            buckets[k].append(tid)
        else:
            outliers.append(tid)
    clusters = tuple(
        Cluster(tuple(members), representative(members, matrix))
        for members in buckets if members)
    return Clustering(clusters, tuple(outliers))


def cluster_matrix(matrix: DissimilarityMatrix,
                   config: ClusteringConfig) -> Clustering:
    """Run the full routine on a precomputed matrix."""
    current = initialize_clusters(matrix, config)
    current = Clustering(
        tuple(Cluster(c.members, representative(c.members, matrix))
              for c in current.clusters),
        current.outliers)
    seen = {current.representatives()}
    iterations = 0
    converged = False
    for _ in range(config.max_iterations):
        nxt = recompute(matrix, current.representatives(), config)
        iterations += 1
        reps = nxt.representatives()
        if reps == current.representatives():
            current = nxt
            converged = True
            break
        if reps in seen:  # oscillation safeguard
            current = nxt
            converged = True
            break
        seen.add(reps)
        current = nxt
    return replace(current, iterations=iterations, converged=converged)


def cluster_trajectories(trajs: Sequence[Trajectory],
                         config: ClusteringConfig,
                         metric: Metric = Metric.HAUSDORFF) -> Clustering:
    """Matrix build plus the full clustering routine."""
    matrix = dissimilarity_matrix(trajs, metric)
    return cluster_matrix(matrix, config)


def clustering_report(clustering: Clustering,
                      matrix: DissimilarityMatrix) -> dict:
    """Machine-readable report: members, representative, distances to it."""
    return {
        "iterations": clustering.iterations,
        "converged": clustering.converged,
        "outliers": list(clustering.outliers),
        "clusters": [
            {
                "representative": c.representative,
                "members": [
                    {"tid": tid,
                     "dist_to_representative": matrix.get(tid, c.representative)}
                    for tid in c.members
                ],
            }
            for c in clustering.clusters
        ],
    }
