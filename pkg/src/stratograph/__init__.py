"""Reconstruction of linearly embedded graphs from noisy point samples.

Given a cloud of points lying within epsilon of an unknown graph embedded
in R^n (straight edges), the pipeline recovers both the abstract graph and
vertex coordinates:

    >>> import numpy as np
    >>> from stratograph import (AbstractGraph, EmbeddedGraph, SampleOptions,
    ...                          sample_graph, reconstruct_structure,
    ...                          FitProblem, fit)
    >>> truth = EmbeddedGraph(AbstractGraph(2, [(0, 1)]), [[0, 0], [4, 0]])
    >>> cloud = sample_graph(truth, 0.1, SampleOptions(seed=7))
    >>> strat = reconstruct_structure(cloud)
    >>> result = fit(FitProblem(cloud, strat))
    >>> np.allclose(sorted(result.vertex_positions[:, 0]), [0, 4], atol=0.2)
    True

The stages are importable separately: dimension classification
(classify_all), clustering and incidence (stratify module), least-squares
coordinate recovery (fit module), plus a certified sampler, validators,
and evaluation metrics.  The ``stratograph`` command line exposes the same
stages on files.
"""

from .core import (AbstractGraph, DimensionLabels, EmbeddedGraph, PointCloud,
                   Stratification, ValidationReport, ensure_valid_cloud,
                   validate_cloud)
from .dimension import ClassifierParams, angle_test, classify_all, classify_point
from .fit import (BiasReport, FitProblem, FitResult, estimate_bias, fit,
                  initialize, objective)
from .geometry import dist_to_embedded_graph, project_to_segment
from .io import (FormatError, read_cloud, read_embedded_graph, read_fit_result,
                 read_stratification, write_cloud, write_embedded_graph,
                 write_fit_result, write_report, write_stratification)
from .metrics import (UnsupportedGraphSize, graph_isomorphic, hausdorff,
                      iter_isomorphisms, vertex_error)
from .neighbors import (ComponentLabeling, GridIndex, NeighborhoodGraph,
                        build_graph, components, radius_neighbors,
                        subset_components)
from .sampler import (AssumptionReport, SampleOptions, check_assumptions,
                      sample_graph, validate_epsilon_sample)
from .stratify import (IncidenceError, assign_incidence, cluster_edges,
                       cluster_vertices, reconstruct_structure)

__version__ = "0.1.0"

__all__ = [
    "AbstractGraph", "AssumptionReport", "BiasReport", "ClassifierParams",
    "ComponentLabeling", "DimensionLabels", "EmbeddedGraph", "FitProblem",
    "FitResult", "FormatError", "GridIndex", "IncidenceError",
    "NeighborhoodGraph", "PointCloud", "SampleOptions", "Stratification",
    "UnsupportedGraphSize", "ValidationReport", "angle_test",
    "assign_incidence", "build_graph", "check_assumptions", "classify_all",
    "classify_point", "cluster_edges", "cluster_vertices", "components",
    "dist_to_embedded_graph", "ensure_valid_cloud", "estimate_bias", "fit",
    "graph_isomorphic", "hausdorff", "initialize", "iter_isomorphisms",
    "objective", "project_to_segment", "radius_neighbors", "read_cloud",
    "read_embedded_graph", "read_fit_result", "read_stratification",
    "reconstruct_structure", "sample_graph", "subset_components",
    "validate_cloud", "validate_epsilon_sample", "vertex_error",
    "write_cloud", "write_embedded_graph", "write_fit_result", "write_report",
    "write_stratification",
]
