"""Density-based clustering over usage points.

Standard DBSCAN under the usage distance: a point is core when its closed
epsilon-ball (itself included) holds at least ``min_pts`` points; clusters
are the maximal sets density-reachable from core points; everything else is
noise. Scan and expansion follow ascending index order, so results are
deterministic for a given input order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .simindex import Point, pairwise_distances


@dataclass(frozen=True)
class ClusteringResult:
    """Disjoint clusters (discovery order, members ascending) plus noise.

    Every input index appears exactly once, either in a cluster or in noise.
    With min_pts > 2 a border point reachable from several clusters is kept
    by the first cluster that reaches it in scan order, so such a run can
    leave a later cluster with fewer members than min_pts.
    """

    clusters: tuple[tuple[int, ...], ...]
    noise: tuple[int, ...]

    def labels(self, n: int) -> list[int]:
        """Cluster id per index, -1 for noise."""
        out = [-1] * n
        for cid, members in enumerate(self.clusters):
            for i in members:
                out[i] = cid
        return out


def run_dbscan(points: Sequence[Point], epsilon: float, min_pts: int = 2,
               distances: np.ndarray | None = None) -> ClusteringResult:
    """Cluster points, leaving non-dense points out as noise.

    Zero-client points are never clustered: a library nobody uses cannot
    co-occur, whatever the epsilon.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    if min_pts < 2:
        raise ValueError(f"min_pts must be >= 2, got {min_pts}")
    n = len(points)
    if n == 0:
        return ClusteringResult(clusters=(), noise=())

    if distances is None:
        distances = pairwise_distances(points)
    eligible = np.array([p.vector.cardinality > 0 for p in points])
    within = (distances <= epsilon) & eligible[:, None] & eligible[None, :]
    np.fill_diagonal(within, False)
    neighbor_lists = [np.flatnonzero(within[i]) for i in range(n)]
    core = np.array([eligible[i] and 1 + len(neighbor_lists[i]) >= min_pts
                     for i in range(n)])

    assigned = np.zeros(n, dtype=bool)
    clusters: list[tuple[int, ...]] = []
    for seed in range(n):
        if assigned[seed] or not core[seed]:
            continue
        members: list[int] = []
        queue: deque[int] = deque([seed])
        assigned[seed] = True
        while queue:
            p = queue.popleft()
            members.append(p)
            if core[p]:
                for q in neighbor_lists[p]:
                    if not assigned[q]:
                        assigned[q] = True
                        queue.append(int(q))
        clusters.append(tuple(sorted(members)))
    noise = tuple(i for i in range(n) if not assigned[i])
    return ClusteringResult(clusters=tuple(clusters), noise=noise)
