"""Local dimension classification: is a sample near a vertex or an edge?

For a query sample q the classifier inspects the samples within 10*eps
(the operating notion of "local"):

  (a) if that ball is disconnected at threshold 2*eps, another strand of
      the graph passes nearby without being joined locally, so q sits on
      an edge (dimension 1);
  (b) otherwise the samples at distance in [8*eps, 10*eps] from q are
      grouped at threshold 3*eps; any count other than two component
      means a vertex neighborhood (dimension 0);
  (c) with exactly two components, the angle they span at q separates a
      straight edge from a sharp degree-2 corner.

All thresholds live in ``ClassifierParams`` so experiments can probe them;
the defaults are the operating values above.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import DimensionLabels, PointCloud
from .geometry import sq_dists
from .neighbors import NeighborhoodGraph

_DEGENERATE = 1e-12


@dataclass(frozen=True)
class ClassifierParams:
    local_radius: float
    annulus_inner: float
    annulus_outer: float
    ball_edge_threshold: float
    annulus_edge_threshold: float
    angle_threshold: float = 2.0 * math.acos(0.25)

    def __post_init__(self):
        if min(self.local_radius, self.annulus_inner, self.annulus_outer,
               self.ball_edge_threshold, self.annulus_edge_threshold) <= 0.0:
            raise ValueError("all classifier radii must be positive")
        if not (self.annulus_inner < self.annulus_outer <= self.local_radius):
            raise ValueError("need annulus_inner < annulus_outer <= local_radius")
        if not (0.0 < self.angle_threshold <= math.pi):
            raise ValueError("angle_threshold must lie in (0, pi]")

    @classmethod
    def from_epsilon(cls, epsilon: float, **overrides) -> "ClassifierParams":
        """Operating thresholds for a declared sample bound ``epsilon``."""
        params = cls(local_radius=10.0 * epsilon,
                     annulus_inner=8.0 * epsilon,
                     annulus_outer=10.0 * epsilon,
                     ball_edge_threshold=2.0 * epsilon,
                     annulus_edge_threshold=3.0 * epsilon)
        return replace(params, **overrides) if overrides else params


def _component_labels(points: np.ndarray, threshold: float):
    """(count, labels) of the threshold graph on a small point set.

    Labels are 0..count-1 in order of each component's smallest member.
    Distances are squared pairwise differences so ties at exactly the
    threshold connect, matching the neighborhood-graph predicate.
    """
    m = len(points)
    if m == 0:
        return 0, np.empty(0, dtype=int)
    diff = points[:, None, :] - points[None, :, :]
    sq = np.einsum("ijk,ijk->ij", diff, diff)
    adj = sq <= threshold * threshold
    labels = np.full(m, -1, dtype=int)
    count = 0
    for seed in range(m):
        if labels[seed] >= 0:
            continue
        comp = adj[seed].copy()
        frontier = comp
        while True:
            new = adj[frontier].any(axis=0) & ~comp
            if not new.any():
                break
            comp |= new
            frontier = new
        labels[comp] = count
        count += 1
    return count, labels


def angle_test(q, comp_a: np.ndarray, comp_b: np.ndarray,
               angle_threshold: float) -> int:
    """Angle at q spanned by the two component centroids: 0 if sharp.

    The comparison happens on cosines (monotone equivalent of comparing
    the arccosine of the clamped normalized dot product), so an angle
    exactly at the threshold is classified 1: equality is not "less than".
    A centroid coinciding with q is degenerate and yields 0.
    """
    q = np.asarray(q, dtype=float)
    ca = np.mean(np.atleast_2d(comp_a), axis=0) - q
    cb = np.mean(np.atleast_2d(comp_b), axis=0) - q
    na = float(np.linalg.norm(ca))
    nb = float(np.linalg.norm(cb))
    if na < _DEGENERATE or nb < _DEGENERATE:
        return 0
    cos_angle = min(1.0, max(-1.0, float(np.dot(ca, cb)) / (na * nb)))
    return 0 if cos_angle > math.cos(angle_threshold) else 1


def _classify_ball(q: np.ndarray, ball: np.ndarray,
                   params: ClassifierParams) -> int:
    n_ball, _ = _component_labels(ball, params.ball_edge_threshold)
    if n_ball != 1:
        return 1

    dq = sq_dists(ball, q)
    lo = params.annulus_inner * params.annulus_inner
    hi = params.annulus_outer * params.annulus_outer
    annulus = ball[(dq >= lo) & (dq <= hi)]

    n_ann, labels = _component_labels(annulus, params.annulus_edge_threshold)
    if n_ann != 2:
        return 0
    return angle_test(q, annulus[labels == 0], annulus[labels == 1],
                      params.angle_threshold)


def classify_point(cloud: PointCloud, graph: NeighborhoodGraph, q_index: int,
                   params: ClassifierParams) -> int:
    """Local dimension of one sample; always returns 0 or 1."""
    pts = cloud.array
    q = pts[q_index]
    ball_idx = graph.index.query(q, params.local_radius)
    return _classify_ball(q, pts[ball_idx], params)


def classify_all(cloud: PointCloud, graph: NeighborhoodGraph,
                 params: ClassifierParams | None = None) -> DimensionLabels:
    """Classify every sample; order of evaluation cannot affect the result.

    Equivalent to calling classify_point on each index, with the ball
    queries batched.
    """
    if params is None:
        params = ClassifierParams.from_epsilon(cloud.epsilon)
    pts = cloud.array
    balls = graph.index.query_many(pts, params.local_radius)
    out = [_classify_ball(pts[i], pts[idx], params)
           for i, idx in enumerate(balls)]
    return DimensionLabels(out)
