"""Seeded random models and skeleton graphs for tests and demos."""

from __future__ import annotations

import random
from itertools import combinations

from .model import CombinatorialModel, Genus, IntersectionRecord, ManifoldAtom
from .skeleton import LabelledGraph, Vertex, edge

__all__ = ["closed_manifolds", "seeded_random_model", "random_labelled_graph"]


def closed_manifolds(n: int) -> list[dict]:
    """A few closed ``n``-manifolds as {name, euler, rank, simply_connected, genus}.

    ``rank`` is the rank of the abelianized fundamental group.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n == 1:
        return [dict(name="circle", euler=0, rank=1, simply_connected=False, genus=None)]
    if n == 2:
        return [
            dict(name="sphere", euler=2, rank=0, simply_connected=True, genus=Genus(True, 0)),
            dict(name="torus", euler=0, rank=2, simply_connected=False, genus=Genus(True, 1)),
            dict(name="genus-2", euler=-2, rank=4, simply_connected=False, genus=Genus(True, 2)),
            dict(name="RP2", euler=1, rank=0, simply_connected=False, genus=Genus(False, 1)),
            dict(name="klein", euler=0, rank=1, simply_connected=False, genus=Genus(False, 2)),
        ]
    even = n % 2 == 0
    out = [
        dict(name="sphere", euler=2 if even else 0, rank=0, simply_connected=True, genus=None),
        dict(name="torus", euler=0, rank=n, simply_connected=False, genus=None),
        dict(name="sphere-x-circle", euler=0, rank=1, simply_connected=False, genus=None),
    ]
    if n >= 4:
        out.append(dict(name="S2-x-sphere", euler=4 if even else 0, rank=0, simply_connected=True, genus=None))
    if n == 4:
        out.append(dict(name="CP2", euler=3, rank=0, simply_connected=True, genus=None))
    return out


def _piece_euler(rng: random.Random, dim: int) -> int:
    if dim == 0:
        return rng.randint(1, 2)
    return rng.choice(closed_manifolds(dim))["euler"]


def seeded_random_model(seed: int, atom_count: int, dim_range: tuple[int, int] = (1, 4),
                        extra_pair_prob: float = 0.3, triple_prob: float = 0.2,
                        tangent_prob: float = 0.0) -> CombinatorialModel:
    """Deterministic random model for ``seed``.

    Atoms get dimensions from ``dim_range`` and invariants from
    :func:`closed_manifolds`. A random spanning tree of pairwise intersections
    of dimension >= 1 keeps the model 1-connected; extra pairs (dimension >= 0),
    triples with all their pair records, and tangent points are added with
    the given probabilities.
    """
    if atom_count < 1:
        raise ValueError("atom_count must be >= 1")
    lo, hi = dim_range
    if not 1 <= lo <= hi:
        raise ValueError("dim_range must satisfy 1 <= lo <= hi")
    rng = random.Random(seed)
    ids = [f"a{i}" for i in range(atom_count)]
    dims = {}
    atoms = []
    for aid in ids:
        n = rng.randint(lo, hi)
        dims[aid] = n
        m = rng.choice(closed_manifolds(n))
        atoms.append(ManifoldAtom(aid, n, m["euler"], {1: m["rank"]}, m["simply_connected"], m["genus"]))

    solid: dict[frozenset, IntersectionRecord] = {}

    def add(members, k):
        key = frozenset(members)
        solid[key] = IntersectionRecord(key, k, _piece_euler(rng, k))

    cap = lambda ms: min(dims[a] for a in ms)  # noqa: E731
    for i in range(1, atom_count):
        j = rng.randrange(i)
        add((ids[i], ids[j]), rng.randint(1, cap((ids[i], ids[j]))))
    for a, b in combinations(ids, 2):
        if frozenset((a, b)) not in solid and rng.random() < extra_pair_prob:
            add((a, b), rng.randint(0, cap((a, b))))
    for tri in combinations(ids, 3):
        if rng.random() >= triple_prob:
            continue
        limit = cap(tri)
        for pair in combinations(tri, 2):
            r = solid.get(frozenset(pair))
            if r is not None:
                limit = min(limit, r.dim)
        k = rng.randint(0, limit)
        for pair in combinations(tri, 2):
            if frozenset(pair) not in solid:
                add(pair, rng.randint(k, cap(pair)))
        add(tri, k)

    tangents = []
    if atom_count >= 2:
        for a, b in combinations(ids, 2):
            if rng.random() < tangent_prob:
                tangents.append(IntersectionRecord(frozenset((a, b)), 0, 1, True))
    return CombinatorialModel(tuple(atoms), tuple(solid.values()) + tuple(tangents))


def random_labelled_graph(seed: int, max_vertices: int = 12, max_label: int = 4,
                          zero_prob: float = 0.3, extra_edge_prob: float = 0.3) -> LabelledGraph:
    """Random member of the skeleton-graph family.

    Positive vertices form a connected graph; each 0-labelled vertex is
    attached to at least two positive vertices and to no other 0-vertex.
    """
    rng = random.Random(seed)
    n_pos = rng.randint(1, max(1, max_vertices - 2))
    n_zero = 0
    if n_pos >= 2:
        n_zero = sum(rng.random() < zero_prob for _ in range(max_vertices - n_pos))
    pos = [f"v{i}" for i in range(n_pos)]
    vertices = [Vertex(v, rng.randint(1, max_label)) for v in pos]
    edges = set()
    for i in range(1, n_pos):
        edges.add(edge(pos[i], pos[rng.randrange(i)]))
    for u, v in combinations(pos, 2):
        if rng.random() < extra_edge_prob:
            edges.add(edge(u, v))
    for z in range(n_zero):
        zid = f"z{z}"
        vertices.append(Vertex(zid, 0))
        for nb in rng.sample(pos, rng.randint(2, min(3, n_pos))):
            edges.add(edge(zid, nb))
    return LabelledGraph(tuple(vertices), frozenset(edges))
