"""
From a labelled graph back to a model
=====================================
"""

from combman import (LabelledGraph, Vertex, are_equivalent, build_graph, edge, realize_model,
                     render_model, validate_labelled_graph)

g = LabelledGraph(
    (Vertex("a", 2), Vertex("b", 3), Vertex("c", 3), Vertex("p", 0)),
    frozenset({edge("a", "b"), edge("b", "c"), edge("p", "a"), edge("p", "c")}),
)
print(validate_labelled_graph(g).ok)

# the 0-vertex becomes one point shared by a and c
m = realize_model(g, 2)
print(render_model(m))
print("round trip:", are_equivalent(build_graph(m, 2), g))
