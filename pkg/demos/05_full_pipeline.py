"""End-to-end reconstruction in the plane and in space.

Runs sample -> structure -> fit -> evaluate for the same abstract graph
under a 2D and a 3D embedding, over a batch of seeds, and summarizes
recovery rate, vertex error, and model-to-sample Hausdorff distance.
The same artifacts are produced on the command line by:

    stratograph pipeline --graph truth.json --epsilon 0.1 --seed 1 \
        --out-dir run/
"""
import math

import numpy as np

from stratograph import (AbstractGraph, EmbeddedGraph, FitProblem,
                         SampleOptions, fit, graph_isomorphic,
                         reconstruct_structure, sample_graph,
                         validate_epsilon_sample, vertex_error)

EPS = 0.1
S3 = 2.0 * math.sqrt(3.0)

EMBEDDINGS = {
    "2D": [(-4.0, 0.0), (0.0, 0.0), (S3, 2.0), (S3, -2.0), (0.0, 6.0)],
    "3D": [(-4.0, 0.0, 0.0), (0.0, 0.0, 0.0),
           (S3, math.sqrt(3.0), 1.0), (S3, -math.sqrt(3.0), -1.0),
           (0.0, 4.0, 4.0)],
}


def main():
    graph = AbstractGraph(5, [(0, 1), (1, 2), (2, 3), (3, 1)])
    for name, coords in EMBEDDINGS.items():
        truth = EmbeddedGraph(graph, coords)
        errors = []
        recovered = 0
        hausdorffs = []
        seeds = range(25)
        for seed in seeds:
            cloud = sample_graph(truth, EPS, SampleOptions(seed=seed))
            strat = reconstruct_structure(cloud)
            result = fit(FitProblem(cloud, strat))
            fitted = result.embedded_graph()
            if graph_isomorphic(fitted.graph, truth.graph) is None:
                continue
            recovered += 1
            errors.append(vertex_error(fitted, truth)[0])
            _, dist = validate_epsilon_sample(cloud, fitted, EPS)
            hausdorffs.append(dist)
        errors = np.array(errors)
        print(f"{name}: {recovered}/{len(list(seeds))} structure recoveries")
        print(f"  vertex error: max {errors.max() / EPS:.2f} eps, "
              f"mean {errors.mean() / EPS:.2f} eps")
        print(f"  sample-to-model Hausdorff: worst "
              f"{max(hausdorffs):.3f} (epsilon {EPS})")


if __name__ == "__main__":
    main()
