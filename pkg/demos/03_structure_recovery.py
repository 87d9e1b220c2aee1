"""Recover abstract structure from an unlabeled cloud.

Pipeline stages shown separately: dimension labels, vertex-region
clusters, edge-region clusters, incidence resolution.  The result is a
stratification of the sample indices plus the abstract graph they imply.
"""
import math

from stratograph import (AbstractGraph, EmbeddedGraph, SampleOptions,
                         graph_isomorphic, reconstruct_structure,
                         sample_graph)

EPS = 0.1
S3 = 2.0 * math.sqrt(3.0)


def main():
    graph = AbstractGraph(5, [(0, 1), (1, 2), (2, 3), (3, 1)])
    truth = EmbeddedGraph(graph, [(-4.0, 0.0), (0.0, 0.0), (S3, 2.0),
                                  (S3, -2.0), (0.0, 6.0)])
    cloud = sample_graph(truth, EPS, SampleOptions(seed=11))
    print(f"cloud: {len(cloud)} points, epsilon {EPS}, truth hidden")

    strat = reconstruct_structure(cloud)
    print(f"\nrecovered {len(strat.vertex_clusters)} vertex clusters:")
    for j, cluster in enumerate(strat.vertex_clusters):
        print(f"  v{j}: {len(cluster)} samples")
    print(f"recovered {len(strat.edge_clusters)} edge clusters:")
    for k, cluster in enumerate(strat.edge_clusters):
        a, b = strat.incidence[k]
        print(f"  e{k}: {len(cluster)} samples, joins v{a} and v{b}")

    recovered = AbstractGraph(len(strat.vertex_clusters), strat.incidence)
    mapping = graph_isomorphic(recovered, truth.graph)
    print("\nisomorphic to the generating graph:",
          "yes" if mapping is not None else "no")
    if mapping is not None:
        print("  cluster -> true vertex:",
              {f"v{a}": b for a, b in sorted(mapping.items())})


if __name__ == "__main__":
    main()
