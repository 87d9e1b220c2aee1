"""Low-level Euclidean helpers shared by the sampler and the fitting code.

All distance predicates in this package compare *squared* distances, so the
same floating-point comparison is used everywhere a threshold appears.
"""
from __future__ import annotations

import numpy as np


def sq_dists(points: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances from each row of ``points`` to ``q``."""
    diff = points - q
    return np.einsum("...i,...i->...", diff, diff)


def project_to_segment(p, a, b):
    """Closest point of the segment [b, a] to p, in barycentric form.

    The segment is parametrized as S(theta) = theta*a + (1-theta)*b with
    theta in [0, 1], so theta = 1 lands on ``a``.  Returns
    ``(theta, squared_distance, degenerate)`` where ``degenerate`` is True
    iff ``a == b`` (then theta = 0 and the distance is to ``b``).
    """
    p = np.asarray(p, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    seg = a - b
    denom = float(np.dot(seg, seg))
    if denom == 0.0:
        d = p - b
        return 0.0, float(np.dot(d, d)), True
    theta = float(np.dot(p - b, seg)) / denom
    theta = min(1.0, max(0.0, theta))
    r = p - (theta * a + (1.0 - theta) * b)
    return theta, float(np.dot(r, r)), False


def project_many(p: np.ndarray, a: np.ndarray, b: np.ndarray):
    """Row-wise ``project_to_segment`` for stacked points/endpoints.

    ``p``, ``a``, ``b`` are (m, n) arrays; returns (theta, sqdist) arrays of
    length m.  Degenerate rows (a == b) get theta = 0.
    """
    seg = a - b
    denom = np.einsum("ij,ij->i", seg, seg)
    safe = np.where(denom > 0.0, denom, 1.0)
    theta = np.einsum("ij,ij->i", p - b, seg) / safe
    theta = np.clip(theta, 0.0, 1.0)
    theta[denom == 0.0] = 0.0
    r = p - (theta[:, None] * a + (1.0 - theta)[:, None] * b)
    return theta, np.einsum("ij,ij->i", r, r)


def dist_to_embedded_graph(points: np.ndarray, vertex_positions: np.ndarray,
                           edges) -> np.ndarray:
    """Exact Euclidean distance from each point to the embedded graph.

    The graph is the union of all vertex positions and all closed edge
    segments, so isolated vertices are covered as well.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    best = np.full(len(points), np.inf)
    for v in vertex_positions:
        best = np.minimum(best, sq_dists(points, v))
    for (i, j) in edges:
        a = vertex_positions[i]
        b = vertex_positions[j]
        m = len(points)
        _, sq = project_many(points, np.broadcast_to(a, (m, len(a))),
                             np.broadcast_to(b, (m, len(b))))
        best = np.minimum(best, sq)
    return np.sqrt(best)


def uniform_ball(rng: np.random.Generator, dim: int, radius: float) -> np.ndarray:
    """One draw from the uniform distribution on the closed ball of ``radius``."""
    if radius == 0.0:
        return np.zeros(dim)
    direction = rng.standard_normal(dim)
    norm = np.linalg.norm(direction)
    while norm == 0.0:
        direction = rng.standard_normal(dim)
        norm = np.linalg.norm(direction)
    r = radius * rng.random() ** (1.0 / dim)
    return direction * (r / norm)
