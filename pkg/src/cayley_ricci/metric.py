"""Shortest-path metric on a Cayley graph.

Unit edge lengths, so breadth-first search is exact; distances stay
integers end to end and the transport layer never sees a float.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .cayley import CayleyGraph


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs graph distances, rows indexed like the graph's vertices."""

    rows: tuple[tuple[int, ...], ...]

    def dist(self, u: int, v: int) -> int:
        return self.rows[u][v]

    @property
    def order(self) -> int:
        return len(self.rows)

    @property
    def diameter(self) -> int:
        return max(max(row) for row in self.rows)


def sssp(graph: CayleyGraph, source: int) -> tuple[int, ...]:
    """BFS distance vector from one vertex."""
    dist = [-1] * graph.order
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in graph.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    # connectivity is enforced at graph construction, so no -1 survives
    return tuple(dist)


def all_pairs(graph: CayleyGraph) -> DistanceMatrix:
    return DistanceMatrix(tuple(sssp(graph, u) for u in range(graph.order)))
