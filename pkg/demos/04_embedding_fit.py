"""Fit vertex positions by alternating least squares.

Given a cloud and its stratification, the embedding is recovered by
minimizing the summed squared distances: vertex-cluster samples pull
their vertex, edge-cluster samples pull the segment between two
vertices through a local coordinate theta in [0, 1].  The demo prints
the objective trace and the per-vertex error against the hidden truth.
"""
import math

import numpy as np

from stratograph import (AbstractGraph, EmbeddedGraph, FitProblem,
                         SampleOptions, fit, initialize, objective,
                         reconstruct_structure, sample_graph, vertex_error)

EPS = 0.1
S3 = 2.0 * math.sqrt(3.0)


def main():
    graph = AbstractGraph(5, [(0, 1), (1, 2), (2, 3), (3, 1)])
    truth = EmbeddedGraph(graph, [(-4.0, 0.0), (0.0, 0.0), (S3, 2.0),
                                  (S3, -2.0), (0.0, 6.0)])
    cloud = sample_graph(truth, EPS, SampleOptions(seed=4))
    strat = reconstruct_structure(cloud)
    problem = FitProblem(cloud, strat)

    x0, t0 = initialize(problem)
    print(f"initial objective (cluster centroids): "
          f"{objective(problem, x0, t0):.6f}")

    result = fit(problem)
    trace = result.objective_trace
    print(f"final objective after {result.iterations} sweeps: "
          f"{result.objective:.6f}")
    print("trace head:", ", ".join(f"{v:.4f}" for v in trace[:6]))
    print("converged:", result.converged)

    fitted = result.embedded_graph()
    worst, mean, mapping = vertex_error(fitted, truth)
    print(f"\nvertex error vs truth: max {worst / EPS:.2f} eps, "
          f"mean {mean / EPS:.2f} eps")
    for a in sorted(mapping):
        d = np.linalg.norm(fitted.vertex_positions[a]
                           - truth.vertex_positions[mapping[a]])
        print(f"  fitted v{a} -> true v{mapping[a]}: off by {d / EPS:.2f} eps")
    print("\nthe persistent offset at degree-1 vertices is the one-sided")
    print("cluster effect: samples sit only on the inward side, so the")
    print("minimizer settles short of the true endpoint.")


if __name__ == "__main__":
    main()
