"""L1 geodesic distances between lattice points of a closed polyomino.

Distances are shortest paths in the lattice graph whose nodes are the lattice
points of closed P and whose edges are unit segments contained in closed P.
For lattice endpoints this equals the continuous L1 geodesic, so all
guard-to-guard distances are integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .polyomino import Point, Polyomino

INF = math.inf


class Unreachable(RuntimeError):
    pass


class NotAVertex(ValueError):
    pass


class LatticeGraph:
    """Sparse adjacency over the lattice points of a closed polyomino."""

    def __init__(self, poly: Polyomino):
        self.poly = poly
        self.points = sorted(poly.lattice_points)
        self.index = {p: i for i, p in enumerate(self.points)}
        rows, cols = [], []
        for p, i in self.index.items():
            for q in (Point(p.x + 1, p.y), Point(p.x, p.y + 1)):
                j = self.index.get(q)
                if j is not None and poly.contains_unit_segment(p, q):
                    rows += (i, j)
                    cols += (j, i)
        n = len(self.points)
        self.matrix = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))

    def distances_from(self, sources) -> np.ndarray:
        """Rows of BFS distances (``inf`` when unreachable) for each source."""
        idx = [self._idx(s) for s in sources]
        return shortest_path(self.matrix, method="D", unweighted=True,
                             directed=False, indices=idx)

    def _idx(self, p) -> int:
        try:
            return self.index[Point(*p)]
        except KeyError:
            raise ValueError(f"{tuple(p)} is not a point of the polyomino") from None


@lru_cache(maxsize=128)
def lattice_graph(poly: Polyomino) -> LatticeGraph:
    return LatticeGraph(poly)


@dataclass(frozen=True)
class DistanceField:
    source: Point
    dist: dict = field(repr=False)

    def __getitem__(self, p) -> int:
        return self.dist[Point(*p)]


def distance_field(p, poly: Polyomino) -> DistanceField:
    graph = lattice_graph(poly)
    row = graph.distances_from([p])[0]
    dist = {q: int(d) for q, d in zip(graph.points, row) if np.isfinite(d)}
    return DistanceField(Point(*p), dist)


def geodesic_distance(p, q, poly: Polyomino) -> int:
    graph = lattice_graph(poly)
    d = graph.distances_from([p])[0][graph._idx(q)]
    if not np.isfinite(d):
        raise Unreachable(f"{tuple(q)} unreachable from {tuple(p)}")
    return int(d)


@lru_cache(maxsize=64)
def vertex_distances(poly: Polyomino) -> tuple[list[Point], np.ndarray]:
    """All-pairs geodesic distances between the vertices of ``poly``,
    as ``(sorted vertices, int matrix)``."""
    verts = sorted(poly.vertices)
    graph = lattice_graph(poly)
    rows = graph.distances_from(verts)
    cols = [graph.index[v] for v in verts]
    return verts, rows[:, cols].astype(np.int64)


def check_vertices(guards, poly: Polyomino) -> list[Point]:
    pts = [Point(*g) for g in guards]
    bad = [g for g in pts if g not in poly.vertices]
    if bad:
        raise NotAVertex(f"not vertices of the polyomino: {sorted(bad)}")
    return pts


def dispersion_distance(guards, poly: Polyomino):
    """Minimum pairwise geodesic distance; ``inf`` for fewer than 2 guards."""
    pts = sorted(set(check_vertices(guards, poly)))
    if len(pts) <= 1:
        return INF
    graph = lattice_graph(poly)
    rows = graph.distances_from(pts)
    cols = [graph.index[p] for p in pts]
    sub = rows[:, cols]
    np.fill_diagonal(sub, np.inf)
    best = sub.min()
    if not np.isfinite(best):
        raise Unreachable("guards lie in different components")
    return int(best)


def closest_pair(guards, poly: Polyomino):
    """A pair of guards realising the dispersion distance, or ``None``."""
    pts = sorted(set(check_vertices(guards, poly)))
    if len(pts) <= 1:
        return None
    graph = lattice_graph(poly)
    rows = graph.distances_from(pts)
    sub = rows[:, [graph.index[p] for p in pts]]
    np.fill_diagonal(sub, np.inf)
    i, j = np.unravel_index(np.argmin(sub), sub.shape)
    return pts[i], pts[j], int(sub[i, j])
