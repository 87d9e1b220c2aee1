"""Grouping classified samples into vertex clusters, edge clusters, and
their incidence, which together determine the abstract graph.

Vertex clusters are connected components of the dimension-0 samples at a
generous threshold (10*eps by default: vertex neighborhoods are wide but
well separated).  Edge clusters use the tighter 3*eps.  Each edge cluster
must then touch exactly two vertex clusters within the link threshold;
those two become the edge's endpoints.
"""
from __future__ import annotations

import numpy as np

from .core import AbstractGraph, DimensionLabels, PointCloud, Stratification
from .dimension import ClassifierParams, classify_all
from .neighbors import GridIndex, NeighborhoodGraph, build_graph, components, subset_components


class IncidenceError(ValueError):
    """An edge cluster does not touch exactly two vertex clusters.

    Usually means the geometric assumptions are violated (a tight loop, a
    short edge) or the declared epsilon does not match the data.
    """

    def __init__(self, edge_cluster: int, candidates):
        self.edge_cluster = int(edge_cluster)
        self.candidates = tuple(sorted(int(c) for c in candidates))
        super().__init__(f"edge cluster {self.edge_cluster} touches vertex "
                         f"clusters {list(self.candidates)}, expected exactly 2")


def _grouped(comp) -> list:
    return [tuple(g) for g in comp.groups()]


def cluster_vertices(cloud: PointCloud, graph: NeighborhoodGraph,
                     labels: DimensionLabels, threshold: float | None = None) -> list:
    """Components of the dimension-0 samples; one cluster per vertex.

    The default threshold is 10*eps, far above the 3*eps neighborhood
    graph radius, so connectivity is recomputed from distances instead of
    reusing the graph's adjacency.
    """
    if threshold is None:
        threshold = 10.0 * cloud.epsilon
    subset = labels.indices_of(0)
    if len(subset) == 0:
        return []
    index = graph.index if graph is not None else None
    return _grouped(subset_components(cloud.array, subset, threshold, index))


def cluster_edges(cloud: PointCloud, graph: NeighborhoodGraph,
                  labels: DimensionLabels, threshold: float | None = None) -> list:
    """Components of the dimension-1 samples at threshold 3*eps."""
    if threshold is None:
        threshold = 3.0 * cloud.epsilon
    subset = labels.indices_of(1)
    if len(subset) == 0:
        return []
    if threshold <= graph.radius:
        return _grouped(components(graph, subset, threshold))
    return _grouped(subset_components(cloud.array, subset, threshold, graph.index))


def assign_incidence(cloud: PointCloud, vertex_clusters, edge_clusters,
                     link_threshold: float | None = None):
    """Match each edge cluster with the two vertex clusters it runs between.

    A vertex cluster is incident when any of its points lies within
    link_threshold (default 3*eps) of any point of the edge cluster.
    Anything other than exactly two incident clusters raises
    IncidenceError naming the edge cluster and the candidates found.
    """
    if link_threshold is None:
        link_threshold = 3.0 * cloud.epsilon
    pts = cloud.array
    owner = {}
    for v_id, cluster in enumerate(vertex_clusters):
        for i in cluster:
            owner[int(i)] = v_id
    index = GridIndex(pts, link_threshold) if owner else None

    incidence = []
    for e_id, cluster in enumerate(edge_clusters):
        touched = set()
        for i in cluster:
            for j in (index.query(pts[int(i)], link_threshold) if index is not None else ()):
                v_id = owner.get(int(j))
                if v_id is not None:
                    touched.add(v_id)
        if len(touched) != 2:
            raise IncidenceError(e_id, touched)
        a, b = sorted(touched)
        incidence.append((a, b))

    graph = AbstractGraph(len(vertex_clusters), incidence)
    return graph, incidence


def reconstruct_structure(cloud: PointCloud, params: ClassifierParams | None = None,
                          vertex_threshold: float | None = None) -> Stratification:
    """Full structure recovery: label dimensions, cluster, wire up incidence."""
    graph = build_graph(cloud, 3.0 * cloud.epsilon)
    labels = classify_all(cloud, graph, params)
    vertex_clusters = cluster_vertices(cloud, graph, labels, vertex_threshold)
    edge_clusters = cluster_edges(cloud, graph, labels)
    _, incidence = assign_incidence(cloud, vertex_clusters, edge_clusters)
    return Stratification(vertex_clusters, edge_clusters, incidence,
                          n_points=len(cloud))
