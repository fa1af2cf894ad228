"""
Equivalence, symmetry and counting series
=========================================
"""

import itertools

from combman import (EnuSeries, LabelledGraph, Vertex, are_equivalent, automorphism_orbits, edge,
                     is_class_transitive, model_enufunction, surface_enufunction, swap_labels)
from combman.generators import random_labelled_graph

g = random_labelled_graph(5, max_vertices=8, zero_prob=0.0)
print(g.labels)
print(automorphism_orbits(g).to_dict())

# a star: four 1-dimensional leaves on a surface
star = LabelledGraph((Vertex("c", 2),) + tuple(Vertex(f"l{i}", 1) for i in range(4)),
                     frozenset(edge("c", f"l{i}") for i in range(4)))
circles = EnuSeries(("x_1_1",), {(0,): 1, (1,): 1}, 3)
res = model_enufunction(star, {1: circles, 2: surface_enufunction(3)})
print("pi0 =", res.pi0)
print(res.series)

# Transitive on classes, and yet swapping two labels changes the graph:
# the class action here is only the cyclic group.
pin = LabelledGraph(
    tuple(Vertex(v, k) for v, k in [("c0", 1), ("c1", 2), ("c2", 3), ("p0", 1), ("p1", 2), ("p2", 3)]),
    frozenset(edge(u, w) for u, w in [("c0", "c1"), ("c1", "c2"), ("c2", "c0"),
                                      ("p0", "c1"), ("p1", "c2"), ("p2", "c0")]))
print("class transitive:", is_class_transitive(pin))
for a, b in itertools.combinations((1, 2, 3), 2):
    print(f"swap {a}<->{b} equivalent:", are_equivalent(pin, swap_labels(pin, a, b)))
