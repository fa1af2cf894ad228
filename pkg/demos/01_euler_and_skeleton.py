"""
Skeleton graphs and the Euler characteristic
============================================

A ring of 2-spheres, each touching the next at a single point.
"""

from combman import (IntersectionRecord, ManifoldAtom, build_graph, clique_sequence,
                     euler_characteristic, export_dot, make_model, validate_model)

n = 4
atoms = [ManifoldAtom(f"s{i}", 2, euler=2, simply_connected=True) for i in range(n)]
# tangent points: dimension 0, Euler characteristic 1
contacts = [IntersectionRecord({f"s{i}", f"s{(i + 1) % n}"}, 0, tangent_point=True) for i in range(n)]
ring = make_model(atoms, contacts)
print(validate_model(ring).ok)

# each tangent point is its own 0-labelled vertex sitting between two spheres
g = build_graph(ring, 1)
print(len(g.vertices), "vertices,", len(g.edges), "edges")
print(export_dot(g))

# sum of sphere characteristics minus one per contact point
print("euler:", euler_characteristic(ring), "expected:", 2 * n - n)

# cliques batched greedily, largest first
print(clique_sequence(g).as_lists())
