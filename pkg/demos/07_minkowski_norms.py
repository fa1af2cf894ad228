"""
Minkowski norms and gluing by a partition of unity
==================================================
"""

import numpy as np

from combman.diffgeo import (ChartSpec, MinkowskiNorm, build_partition_norm, euclidean_norm,
                             minkowski_check)

rng = np.random.default_rng(3)
for dim in (2, 4, 6):
    rep = minkowski_check(euclidean_norm(dim), rng.standard_normal((100, dim)))
    print(dim, rep.ok, f"min eigenvalue {rep.min_eigenvalue:.6f}")

# |v0| - |v1| goes negative, so it is no norm at all
bad = MinkowskiNorm(2, lambda v: abs(v[0]) - abs(v[1]))
print(minkowski_check(bad, rng.standard_normal((50, 2))).failures)

# l1 is homogeneous and nonnegative but its fundamental form is degenerate
l1 = MinkowskiNorm(3, lambda v: float(np.abs(v).sum()))
print(minkowski_check(l1, rng.standard_normal((50, 3))).failures)

chart = ChartSpec(2, 1, (2, 3))
F = build_partition_norm(chart, [euclidean_norm(2), euclidean_norm(3, 2.0)], [0.25, 0.75])
print("glued:", minkowski_check(F, rng.standard_normal((100, chart.D))).ok)
