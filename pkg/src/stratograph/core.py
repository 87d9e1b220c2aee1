"""Domain types: point clouds, abstract/embedded graphs, stratifications.

Values are immutable after construction (arrays are frozen), so they can be
shared freely across threads.  ``PointCloud`` construction is deliberately
permissive: malformed inputs are representable so that ``validate_cloud``
can report what is wrong instead of crashing; pipeline operations require a
valid cloud and raise otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class PointCloud:
    """A finite set of points in R^n with a declared noise/density bound.

    ``epsilon`` is the bound of the sampling model: every point lies within
    epsilon of the underlying space and every location of the space has a
    sample within epsilon.  It is always supplied by the caller, never
    estimated from the data.
    """

    def __init__(self, points, epsilon: float, ambient_dim: Optional[int] = None):
        pts = [np.asarray(p, dtype=float).reshape(-1) for p in points]
        for p in pts:
            _freeze(p)
        self._points = tuple(pts)
        self.epsilon = float(epsilon)
        if ambient_dim is not None:
            self.ambient_dim = int(ambient_dim)
        elif pts:
            self.ambient_dim = len(pts[0])
        else:
            self.ambient_dim = 0
        self._array: Optional[np.ndarray] = None

    @property
    def points(self):
        return self._points

    def __len__(self) -> int:
        return len(self._points)

    @property
    def array(self) -> np.ndarray:
        """All points as an (n_points, ambient_dim) array; requires a valid cloud."""
        if self._array is None:
            report = validate_cloud(self)
            if not report.valid:
                raise ValueError("invalid point cloud: " + "; ".join(report.findings))
            self._array = _freeze(np.array(self._points, dtype=float).reshape(
                len(self._points), self.ambient_dim))
        return self._array

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointCloud):
            return NotImplemented
        return (self.epsilon == other.epsilon
                and self.ambient_dim == other.ambient_dim
                and len(self) == len(other)
                and all(a.shape == b.shape and np.array_equal(a, b)
                        for a, b in zip(self._points, other._points)))

    def __repr__(self) -> str:
        return (f"PointCloud(n={len(self)}, ambient_dim={self.ambient_dim}, "
                f"epsilon={self.epsilon})")


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of ``validate_cloud``: fatal findings plus informational warnings.

    ``valid`` is determined by findings alone; warnings (currently only
    duplicate points, which the pipeline permits) never invalidate a cloud.
    """
    findings: tuple
    warnings: tuple = ()

    @property
    def valid(self) -> bool:
        return not self.findings

    def as_dict(self) -> dict:
        return {"valid": self.valid, "findings": list(self.findings),
                "warnings": list(self.warnings)}


def validate_cloud(cloud: PointCloud) -> ValidationReport:
    """Check the PointCloud invariants, reporting every violation found."""
    findings = []
    warnings = []
    if not np.isfinite(cloud.epsilon) or cloud.epsilon <= 0.0:
        findings.append("epsilon must be positive")
    if len(cloud) == 0:
        findings.append("point cloud is empty")
    for i, p in enumerate(cloud.points):
        if len(p) != cloud.ambient_dim:
            findings.append(
                f"point {i} has {len(p)} coordinates, expected {cloud.ambient_dim}")
        elif not np.all(np.isfinite(p)):
            findings.append(f"non-finite coordinate at index {i}")
    if not findings and len(cloud) > 1:
        arr = np.array(cloud.points)
        order = np.lexsort(arr.T)
        same = np.all(arr[order][1:] == arr[order][:-1], axis=1)
        for k in np.nonzero(same)[0]:
            warnings.append(
                f"duplicate point: indices {order[k]} and {order[k + 1]}")
    return ValidationReport(tuple(findings), tuple(warnings))


def ensure_valid_cloud(cloud: PointCloud) -> np.ndarray:
    """Return the cloud's point array, raising ValueError if it is invalid."""
    return cloud.array


@dataclass(frozen=True)
class AbstractGraph:
    """Combinatorial graph: a vertex count and unordered edge pairs.

    Self-loops and parallel edges are rejected at construction; the
    incidence step of the reconstruction assumes every edge has two
    distinct bounding vertices, so degenerate inputs fail loudly here.
    """
    vertex_count: int
    edges: tuple

    def __init__(self, vertex_count: int, edges: Sequence = ()):
        object.__setattr__(self, "vertex_count", int(vertex_count))
        norm = []
        seen = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise ValueError(f"self-loop ({i}, {j}) is not allowed")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise ValueError(f"edge ({i}, {j}) out of range for "
                                 f"{self.vertex_count} vertices")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.vertex_count, dtype=int)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency_sets(self):
        adj = [set() for _ in range(self.vertex_count)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj


class EmbeddedGraph:
    """An abstract graph realized in R^n by one coordinate vector per vertex."""

    def __init__(self, graph: AbstractGraph, vertex_positions):
        pos = np.array(vertex_positions, dtype=float)
        if pos.ndim == 1:
            pos = pos.reshape(len(pos), 1) if graph.vertex_count != 1 else pos.reshape(1, -1)
        if pos.ndim != 2 or pos.shape[0] != graph.vertex_count:
            raise ValueError("vertex_positions must supply one coordinate "
                             "vector per vertex")
        if not np.all(np.isfinite(pos)):
            raise ValueError("vertex positions must be finite")
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                if np.array_equal(pos[i], pos[j]):
                    raise ValueError(f"vertices {i} and {j} share a position")
        self.graph = graph
        self.vertex_positions = _freeze(pos)

    @property
    def ambient_dim(self) -> int:
        return self.vertex_positions.shape[1]

    def edge_lengths(self) -> np.ndarray:
        out = np.empty(len(self.graph.edges))
        for k, (i, j) in enumerate(self.graph.edges):
            out[k] = np.linalg.norm(self.vertex_positions[i] - self.vertex_positions[j])
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return (self.graph == other.graph
                and self.vertex_positions.shape == other.vertex_positions.shape
                and np.array_equal(self.vertex_positions, other.vertex_positions))

    def __repr__(self) -> str:
        return (f"EmbeddedGraph(vertices={self.graph.vertex_count}, "
                f"edges={self.graph.edge_count}, ambient_dim={self.ambient_dim})")


class DimensionLabels:
    """Per-point local dimension: 0 near a vertex, 1 near an edge."""

    def __init__(self, labels):
        arr = np.asarray(labels, dtype=int)
        if arr.ndim != 1:
            raise ValueError("labels must be one-dimensional")
        bad = set(np.unique(arr)) - {0, 1}
        if bad:
            raise ValueError(f"labels must be 0 or 1, got {sorted(bad)}")
        self.labels = _freeze(arr)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, i) -> int:
        return int(self.labels[i])

    def indices_of(self, dim: int) -> np.ndarray:
        return np.nonzero(self.labels == dim)[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DimensionLabels):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)


class Stratification:
    """Partition of the sample indices into vertex and edge clusters.

    ``incidence[k]`` gives the ordered pair (j1, j2) of vertex-cluster
    indices bounding edge cluster k.  Clusters are disjoint, non-empty, and
    jointly cover every point index.
    """

    def __init__(self, vertex_clusters, edge_clusters, incidence, n_points=None):
        self.vertex_clusters = tuple(tuple(sorted(int(i) for i in c))
                                     for c in vertex_clusters)
        self.edge_clusters = tuple(tuple(sorted(int(i) for i in c))
                                   for c in edge_clusters)
        self.incidence = tuple((int(a), int(b)) for a, b in incidence)
        self._check(n_points)

    def _check(self, n_points):
        seen = set()
        for c in self.vertex_clusters + self.edge_clusters:
            if not c:
                raise ValueError("clusters must be non-empty")
            for i in c:
                if i in seen:
                    raise ValueError(f"point {i} appears in two clusters")
                seen.add(i)
        n = len(seen)
        if n_points is not None and n != n_points:
            raise ValueError(f"clusters cover {n} points, expected {n_points}")
        if seen and (min(seen) != 0 or max(seen) != n - 1):
            raise ValueError("clusters must partition the contiguous index range")
        self.n_points = n
        if len(self.incidence) != len(self.edge_clusters):
            raise ValueError("one incidence pair per edge cluster is required")
        kv = len(self.vertex_clusters)
        for k, (a, b) in enumerate(self.incidence):
            if a == b:
                raise ValueError(f"edge cluster {k} has identical endpoints")
            if not (0 <= a < kv and 0 <= b < kv):
                raise ValueError(f"edge cluster {k} incidence {a, b} out of range")

    def labels(self) -> DimensionLabels:
        lab = np.zeros(self.n_points, dtype=int)
        for c in self.edge_clusters:
            lab[list(c)] = 1
        return DimensionLabels(lab)

    def abstract_graph(self) -> AbstractGraph:
        return AbstractGraph(len(self.vertex_clusters), self.incidence)

    def vertex_cluster_of(self) -> dict:
        """Map point index -> vertex cluster index (dim-0 points only)."""
        out = {}
        for j, c in enumerate(self.vertex_clusters):
            for i in c:
                out[i] = j
        return out

    def edge_cluster_of(self) -> dict:
        out = {}
        for k, c in enumerate(self.edge_clusters):
            for i in c:
                out[i] = k
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Stratification):
            return NotImplemented
        return (self.vertex_clusters == other.vertex_clusters
                and self.edge_clusters == other.edge_clusters
                and self.incidence == other.incidence)

    def __repr__(self) -> str:
        return (f"Stratification(vertex_clusters={len(self.vertex_clusters)}, "
                f"edge_clusters={len(self.edge_clusters)})")
