"""
Metric-compatible, torsion-free connections
===========================================
"""

import math

import numpy as np

from combman.diffgeo import (MetricField, christoffel_from_metric, constant, coordinate,
                             metric_compatibility_residual, torsion)

# polar-type metric diag(1, x0^2)
x0 = coordinate(2, 0)
polar = MetricField.from_polynomials([[constant(2, 1), constant(2, 0)], [constant(2, 0), x0 * x0]])
G = christoffel_from_metric(polar, [2.0, 0.3])
print("Gamma^1_01 =", G[1, 0, 1], " Gamma^0_11 =", G[0, 1, 1])
print("residual   =", metric_compatibility_residual(polar, G, [2.0, 0.3]))
print("torsion    =", np.abs(torsion(G)).max())

# warped product diag(1, exp(2 x0), 1), derivatives by central differences
warped = MetricField(3, lambda p: np.diag([1.0, math.exp(2 * p[0]), 1.0]))
point = [0.4, 0.0, 0.0]
G_fd = christoffel_from_metric(warped, point)


def warped_partials(p):
    dg = np.zeros((3, 3, 3))
    dg[0, 1, 1] = 2 * math.exp(2 * p[0])
    return dg


exact_dg = MetricField(3, warped.g, warped_partials)
print("fd residual against exact partials:", metric_compatibility_residual(exact_dg, G_fd, point))
