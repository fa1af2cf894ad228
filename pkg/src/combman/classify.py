"""Combinatorial equivalence and class-permuting automorphisms.

Two models are equivalent when their labelled skeletons are isomorphic by a
label-preserving map. Automorphisms of the unlabelled skeleton act on the
label classes C(n) = {v : label(v) = n} only when they carry every class onto
a class; those are the ones considered here. The tangent-point class
(label 0) is always kept in place.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .skeleton import LabelledGraph, Vertex

__all__ = [
    "OrbitReport",
    "GraphTooLarge",
    "MAX_ORBIT_VERTICES",
    "label_classes",
    "find_isomorphism",
    "are_equivalent",
    "find_class_automorphism",
    "automorphism_orbits",
    "is_class_transitive",
    "relabel",
    "swap_labels",
]

MAX_ORBIT_VERTICES = 64


class GraphTooLarge(ValueError):
    pass


def label_classes(g: LabelledGraph) -> dict[int, frozenset[str]]:
    classes: dict[int, set[str]] = {}
    for v in g.vertices:
        classes.setdefault(v.label, set()).add(v.id)
    return {k: frozenset(s) for k, s in sorted(classes.items())}


def _refine(graphs, initial):
    """Colour refinement run jointly on several graphs so colours are comparable.

    ``initial`` maps (graph index, vertex) to a hashable starting colour.
    Returns the stable colouring as integers.
    """
    colour = {}
    palette: dict = {}
    for key, c in initial.items():
        colour[key] = palette.setdefault(c, len(palette))
    n_colours = len(palette)
    while True:
        palette = {}
        new = {}
        for (gi, v), c in colour.items():
            adj = graphs[gi].adjacency[v]
            sig = (c, tuple(sorted(Counter(colour[(gi, w)] for w in adj).items())))
            new[(gi, v)] = palette.setdefault(sig, len(palette))
        colour = new
        if len(palette) == n_colours:
            return colour
        n_colours = len(palette)


def _search(g1: LabelledGraph, g2: LabelledGraph, colour, label_map=None):
    """Backtracking for a bijection g1 -> g2 preserving adjacency and colour.

    With ``label_map`` (a dict, possibly partial) labels are mapped through a
    consistent injective class map that is extended during the search;
    without it labels must match exactly. Returns the vertex map or None.
    """
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    l1, l2 = g1.labels, g2.labels
    adj1, adj2 = g1.adjacency, g2.adjacency
    by_colour: dict[int, list[str]] = {}
    for v in sorted(g2.ids):
        by_colour.setdefault(colour[(1, v)], []).append(v)
    if Counter(colour[(0, v)] for v in g1.ids) != Counter(colour[(1, v)] for v in g2.ids):
        return None

    # process vertices by rarity of colour, keeping each next to mapped ones
    order: list[str] = []
    placed: set[str] = set()
    remaining = sorted(g1.ids, key=lambda v: (len(by_colour[colour[(0, v)]]), v))
    while remaining:
        pick = next((v for v in remaining if adj1[v] & placed), remaining[0])
        remaining.remove(pick)
        order.append(pick)
        placed.add(pick)

    mapping: dict[str, str] = {}
    used: set[str] = set()
    fwd = dict(label_map) if label_map is not None else None
    bwd = {b: a for a, b in fwd.items()} if fwd is not None else None

    def feasible(v, w):
        if fwd is None:
            if l1[v] != l2[w]:
                return False
        else:
            a, b = l1[v], l2[w]
            if fwd.get(a, b) != b or bwd.get(b, a) != a:
                return False
        for u in adj1[v]:
            if u in mapping and mapping[u] not in adj2[w]:
                return False
        mapped_nbrs = sum(1 for u in adj1[v] if u in mapping)
        if mapped_nbrs != sum(1 for x in adj2[w] if x in used):
            return False
        return True

    def step(i):
        if i == len(order):
            return True
        v = order[i]
        for w in by_colour[colour[(0, v)]]:
            if w in used or not feasible(v, w):
                continue
            added = None
            if fwd is not None and l1[v] not in fwd:
                added = l1[v]
                fwd[added] = l2[w]
                bwd[l2[w]] = added
            mapping[v] = w
            used.add(w)
            if step(i + 1):
                return True
            del mapping[v]
            used.discard(w)
            if added is not None:
                del bwd[fwd.pop(added)]
        return False

    return dict(mapping) if step(0) else None


def find_isomorphism(g1: LabelledGraph, g2: LabelledGraph) -> dict[str, str] | None:
    """A label-preserving isomorphism g1 -> g2, or None."""
    init = {(0, v.id): v.label for v in g1.vertices}
    init.update({(1, v.id): v.label for v in g2.vertices})
    colour = _refine([g1, g2], init)
    return _search(g1, g2, colour)


def are_equivalent(g1: LabelledGraph, g2: LabelledGraph) -> bool:
    return find_isomorphism(g1, g2) is not None


def _class_invariant_colours(g: LabelledGraph):
    # invariants preserved by every class-permuting automorphism
    sizes = Counter(v.label for v in g.vertices)
    init = {}
    for v in g.vertices:
        same = sum(1 for w in g.adjacency[v.id] if g.labels[w] == v.label)
        init[(0, v.id)] = (v.label == 0, sizes[v.label], same)
        init[(1, v.id)] = init[(0, v.id)]
    return _refine([g, g], init)


def find_class_automorphism(g: LabelledGraph, src: int, dst: int,
                            colour=None) -> dict[str, str] | None:
    """An automorphism permuting label classes with C(src) onto C(dst)."""
    if colour is None:
        colour = _class_invariant_colours(g)
    seed = {src: dst}
    if 0 in g.labels.values():
        if (src == 0) != (dst == 0):
            return None
        seed[0] = 0
    return _search(g, g, colour, label_map=seed)


@dataclass(frozen=True)
class OrbitReport:
    classes: dict[int, frozenset[str]]
    pi0: int
    class_transitive: bool
    orbits: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"pi0": self.pi0, "class_transitive": self.class_transitive,
                "orbits": [list(o) for o in self.orbits]}


def automorphism_orbits(g: LabelledGraph) -> OrbitReport:
    """Orbits of the class-permuting automorphism group on positive label classes.

    For every pair of classes an automorphism carrying one onto the other is
    searched for directly; orbits are the resulting equivalence classes.
    """
    if len(g.vertices) > MAX_ORBIT_VERTICES:
        raise GraphTooLarge(f"graph too large for exact orbit search "
                            f"({len(g.vertices)} > {MAX_ORBIT_VERTICES} vertices)")
    classes = label_classes(g)
    positive = [k for k in classes if k > 0]
    colour = _class_invariant_colours(g)
    parent = {k: k for k in positive}

    def root(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for i, a in enumerate(positive):
        for b in positive[i + 1:]:
            if root(a) == root(b) or len(classes[a]) != len(classes[b]):
                continue
            sigma = find_class_automorphism(g, a, b, colour)
            if sigma is None:
                continue
            # every class pair moved by sigma lies in one orbit
            for k in positive:
                image = g.labels[sigma[next(iter(classes[k]))]]
                ra, rb = root(k), root(image)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for k in positive:
        groups.setdefault(root(k), []).append(k)
    orbits = tuple(tuple(v) for _, v in sorted(groups.items()))
    pi0 = max(len(orbits), 1)
    return OrbitReport(classes, pi0, pi0 == 1, orbits)


def is_class_transitive(g: LabelledGraph) -> bool:
    return automorphism_orbits(g).class_transitive


def relabel(g: LabelledGraph, mapping: dict[str, str]) -> LabelledGraph:
    """Rename vertex ids; labels and structure are untouched."""
    vertices = tuple(Vertex(mapping[v.id], v.label) for v in g.vertices)
    edges = frozenset(frozenset(mapping[x] for x in e) for e in g.edges)
    return LabelledGraph(vertices, edges, g.d)


def swap_labels(g: LabelledGraph, a: int, b: int) -> LabelledGraph:
    """Exchange labels ``a`` and ``b`` on their classes."""
    swap = {a: b, b: a}
    vertices = tuple(Vertex(v.id, swap.get(v.label, v.label)) for v in g.vertices)
    return LabelledGraph(vertices, g.edges, g.d)
