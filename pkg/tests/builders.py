"""Small hand-built models and graphs shared across test modules."""

import random

from combman import IntersectionRecord, LabelledGraph, ManifoldAtom, Vertex, edge, make_model, relabel


def atom(aid, dim, euler=None, rank=None, sc=False, genus=None):
    return ManifoldAtom(aid, dim, euler, {1: rank} if rank is not None else {}, sc, genus)


def rec(ids, dim, euler=None, tangent=False):
    return IntersectionRecord(frozenset(ids), dim, euler, tangent)


def sphere_cycle(n: int):
    """n 2-spheres in a cycle, consecutive ones touching at one point."""
    atoms = [atom(f"s{i}", 2, 2, sc=True) for i in range(n)]
    recs = [rec((f"s{i}", f"s{(i + 1) % n}"), 0, tangent=True) for i in range(n)]
    return make_model(atoms, recs)


def two_spheres_on_circle():
    return make_model([atom("a", 2, 2, sc=True), atom("b", 2, 2, sc=True)], [rec("ab", 1, 0)])


def torus_bouquet(point_contacts: bool = False):
    """Torus with four circles attached; along arcs or at single points."""
    atoms = [atom("T", 2, 0, rank=2)] + [atom(f"c{i}", 1, 0, rank=1) for i in range(4)]
    recs = [rec(("T", f"c{i}"), 0 if point_contacts else 1, 1 if point_contacts else 0)
            for i in range(4)]
    return make_model(atoms, recs)


def graph(labels: dict, edges=()):
    return LabelledGraph(tuple(Vertex(k, v) for k, v in labels.items()),
                         frozenset(edge(u, w) for u, w in edges))


def star(center_label=2, leaf_label=1, leaves=4):
    labels = {"c": center_label} | {f"l{i}": leaf_label for i in range(leaves)}
    return graph(labels, [("c", f"l{i}") for i in range(leaves)])


def complete(labels):
    ids = [f"k{i}" for i in range(len(labels))]
    return graph(dict(zip(ids, labels)),
                 [(ids[i], ids[j]) for i in range(len(ids)) for j in range(i + 1, len(ids))])


def path(labels):
    ids = [f"p{i}" for i in range(len(labels))]
    return graph(dict(zip(ids, labels)), list(zip(ids, ids[1:])))


def renamed(g, seed=0):
    """Copy of ``g`` with vertex ids permuted and prefixed."""
    ids = g.ids
    shuffled = ids[:]
    random.Random(seed).shuffle(shuffled)
    return relabel(g, {a: f"r_{b}" for a, b in zip(ids, shuffled)})
