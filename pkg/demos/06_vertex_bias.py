"""Measure the systematic drift of fitted vertices.

Vertex clusters absorb on-edge samples out to several epsilon, so a
fitted vertex is pulled toward the average of its incident edges.  At a
hub with symmetric spokes the pulls cancel; at a spoke end they do not.
estimate_bias runs many independent noisy reconstructions and reports
per-vertex mean displacement with covariance, which makes the effect
quantitative.
"""
import math

import numpy as np

from stratograph import AbstractGraph, EmbeddedGraph, estimate_bias

EPS = 0.1


def main():
    arm = 3.2
    angles = [math.pi / 2 + k * 2 * math.pi / 3 for k in range(3)]
    positions = [(0.0, 0.0)] + [(arm * math.cos(a), arm * math.sin(a))
                                for a in angles]
    hub = EmbeddedGraph(AbstractGraph(4, [(0, 1), (0, 2), (0, 3)]),
                        positions)

    report = estimate_bias(hub, EPS, trials=60, seed=3)
    print(f"trials: {report.trials}, failures: {report.failures}")

    names = ["hub", "end a", "end b", "end c"]
    print("\nper-vertex mean displacement (units of eps):")
    for v, name in enumerate(names):
        d = report.mean_displacement[v] / EPS
        spread = math.sqrt(float(np.trace(report.covariance[v]))) / EPS
        print(f"  {name:6s} ({d[0]:+.2f}, {d[1]:+.2f})  spread {spread:.2f}")

    print("\nradial component at the spoke ends (negative = toward hub):")
    for v, name in zip((1, 2, 3), names[1:]):
        u = np.asarray(positions[v]) / arm
        radial = float(report.mean_displacement[v] @ u) / EPS
        print(f"  {name}: {radial:+.2f} eps")
    print("\nthe hub stays put by symmetry; spoke ends drift inward by a")
    print("few eps because their clusters only see samples on one side.")


if __name__ == "__main__":
    main()
