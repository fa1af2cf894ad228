"""
Levels of connectivity
======================

Raising d removes every edge whose intersection is lower-dimensional than d.
"""

from combman import (build_graph, derive_next, edge_drop_set, fundamental_group_rank,
                     is_connected, max_connected_d)
from combman.generators import seeded_random_model

m = seeded_random_model(11, 6, dim_range=(2, 4))
for a in m.atoms:
    print(a.id, "dim", a.dim, "rank", a.rank(1))

for d in range(1, max(m.dims) + 1):
    g = build_graph(m, d)
    dropped = edge_drop_set(m, d)
    same = derive_next(g, dropped) == build_graph(m, d + 1)
    print(f"d={d}: {len(g.edges)} edges, connected={is_connected(g)}, "
          f"drops {len(dropped)}, recursion ok={same}")

print("largest connected level:", max_connected_d(m), "smallest atom dim:", min(m.dims))

# atom ranks plus independent cycles of the skeleton
r = fundamental_group_rank(m, 1)
print("rank at d=1:", r.total, "atoms", r.atom_part, "cycles", r.graph_part)
