"""Labelled skeleton graphs G^d of combinatorial models.

Manifold vertices carry their dimension as label; every tangent-point record
contributes one extra vertex labelled 0 joined to each atom it touches. Two
manifold vertices are adjacent in G^d when they share an intersection of
dimension at least d.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import jsonschema

from .model import (
    CombinatorialModel,
    IntersectionRecord,
    ManifoldAtom,
    ValidationReport,
    Violation,
    _require_valid,
)

__all__ = [
    "Vertex",
    "LabelledGraph",
    "GraphError",
    "Edge",
    "edge",
    "build_graph",
    "edge_drop_set",
    "derive_next",
    "is_connected",
    "connected_components",
    "cycle_rank",
    "max_connected_d",
    "validate_labelled_graph",
    "realize_model",
    "export_dot",
    "parse_graph",
    "render_graph",
    "graph_to_dict",
    "graph_from_dict",
    "load_graph",
    "GRAPH_SCHEMA",
]

Edge = frozenset


def edge(u: str, v: str) -> frozenset[str]:
    return frozenset((u, v))


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: str
    label: int


@dataclass(frozen=True, eq=False)
class LabelledGraph:
    """Simple undirected graph with non-negative integer vertex labels.

    ``d`` records the connectivity level the graph was built for; graphs read
    from files without provenance use 0.
    """

    vertices: tuple[Vertex, ...]
    edges: frozenset[frozenset[str]] = frozenset()
    d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise GraphError("duplicate vertex id")
        known = set(ids)
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"self-loop at {sorted(e)}")
            if not e <= known:
                raise GraphError(f"edge {sorted(e)} references unknown vertex")
        for v in self.vertices:
            if v.label < 0:
                raise GraphError(f"negative label on {v.id}")

    def __eq__(self, other):
        if not isinstance(other, LabelledGraph):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices)
                and self.edges == other.edges and self.d == other.d)

    def __hash__(self):
        return hash((frozenset(self.vertices), self.edges, self.d))

    @cached_property
    def labels(self) -> dict[str, int]:
        return {v.id: v.label for v in self.vertices}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v.id: set() for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            adj[u].add(w)
            adj[w].add(u)
        return {k: frozenset(s) for k, s in adj.items()}

    @property
    def ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def with_edges(self, edges, d: int | None = None) -> "LabelledGraph":
        return LabelledGraph(self.vertices, frozenset(edges), self.d if d is None else d)


def _tangent_vertex_ids(model: CombinatorialModel) -> list[str]:
    taken = set(model.atom_ids)
    out = []
    for k, _ in enumerate(model.tangent_records):
        vid = f"pt{k}"
        while vid in taken:
            vid = "_" + vid
        taken.add(vid)
        out.append(vid)
    return out


def build_graph(model: CombinatorialModel, d: int) -> LabelledGraph:
    """Skeleton graph of ``model`` at connectivity level ``d``.

    Parameters
    ----------
    model : CombinatorialModel
        A valid model.
    d : int
        Minimum intersection dimension producing an edge, ``d >= 1``.

    Returns
    -------
    LabelledGraph
        Atoms first (in model order), then one 0-labelled vertex per
        tangent-point record, named ``pt0``, ``pt1``, ...
    """
    if d < 1:
        raise GraphError(f"connectivity level must be >= 1, got {d}")
    _require_valid(model)
    vertices = [Vertex(a.id, a.dim) for a in model.atoms]
    edges = set()
    for r in model.solid_records:
        if r.dim >= d:
            members = sorted(r.atoms)
            for i, u in enumerate(members):
                for w in members[i + 1:]:
                    edges.add(edge(u, w))
    for vid, r in zip(_tangent_vertex_ids(model), model.tangent_records):
        vertices.append(Vertex(vid, 0))
        for a in r.atoms:
            edges.add(edge(vid, a))
    return LabelledGraph(tuple(vertices), frozenset(edges), d)


def edge_drop_set(model: CombinatorialModel, d: int) -> frozenset[frozenset[str]]:
    """Edges of G^d missing from G^(d+1)."""
    return build_graph(model, d).edges - build_graph(model, d + 1).edges


def derive_next(g: LabelledGraph, e_drop: Iterable) -> LabelledGraph:
    """Apply the recursion G^(d+1) = G^d - E^d."""
    drop = frozenset(frozenset(e) for e in e_drop)
    unknown = drop - g.edges
    if unknown:
        raise GraphError(f"edges not in graph: {sorted(tuple(sorted(e)) for e in unknown)}")
    return g.with_edges(g.edges - drop, d=g.d + 1)


def connected_components(g: LabelledGraph) -> list[set[str]]:
    seen: set[str] = set()
    comps = []
    for start in g.ids:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: LabelledGraph) -> bool:
    return len(g.vertices) > 0 and len(connected_components(g)) == 1


def cycle_rank(g: LabelledGraph) -> int:
    """First Betti number |E| - |V| + c."""
    return len(g.edges) - len(g.vertices) + len(connected_components(g))


def max_connected_d(model: CombinatorialModel) -> int:
    """Largest ``d <= n_1`` with G^d connected, or 0 when G^1 is disconnected."""
    _require_valid(model)
    best = 0
    for d in range(1, min(model.dims) + 1):
        if not is_connected(build_graph(model, d)):
            break
        best = d
    return best


def validate_labelled_graph(g: LabelledGraph) -> ValidationReport:
    """Membership check for the family of skeleton graphs.

    Hard violations: empty or disconnected graph, a 0-labelled vertex next to
    another 0-labelled vertex, a 0-labelled vertex with fewer than two
    neighbours. The "label-1 vertices induce a union of complete graphs"
    condition is reported as an advisory only.
    """
    out = []
    if not g.vertices:
        out.append(Violation("empty-graph", "graph has no vertices"))
        return ValidationReport(tuple(out))
    if not is_connected(g):
        out.append(Violation("not-connected", "not connected"))
    labels = g.labels
    for v in g.ids:
        if labels[v] != 0:
            continue
        bad = sorted(w for w in g.adjacency[v] if labels[w] == 0)
        if bad:
            out.append(Violation("zero-adjacency",
                                 "0-labelled vertex adjacent to 0-labelled vertex", (v, *bad)))
        if len(g.adjacency[v]) < 2:
            out.append(Violation("zero-degree",
                                 "tangent-point vertex needs at least two neighbours", (v,)))

    advisories = []
    ones = {v for v in g.ids if labels[v] == 1}
    sub = LabelledGraph(tuple(x for x in g.vertices if x.id in ones),
                        frozenset(e for e in g.edges if e <= ones))
    for comp in connected_components(sub) if ones else []:
        k = len(comp)
        inner = sum(1 for e in sub.edges if e <= comp)
        if inner != k * (k - 1) // 2:
            advisories.append(Violation("label-one-cliques",
                                        "label-1 vertices do not induce complete components",
                                        tuple(sorted(comp))))
    return ValidationReport(tuple(out), tuple(advisories))


def realize_model(g: LabelledGraph, d: int) -> CombinatorialModel:
    """Construct a model whose level-``d`` skeleton is ``g``.

    Every positive vertex becomes a simply connected atom of dimension equal
    to its label. Each edge between positive vertices becomes an intersection
    of dimension exactly ``d``; each 0-labelled vertex becomes one tangent
    point shared by all its neighbours.
    """
    if d < 1:
        raise GraphError(f"connectivity level must be >= 1, got {d}")
    report = validate_labelled_graph(g)
    if not report.ok:
        raise GraphError("graph not in family: " + "; ".join(map(str, report.violations)))
    labels = g.labels
    low = sorted(v for v in g.ids if 0 < labels[v] < d)
    if low:
        raise GraphError(f"label below connectivity: {low}")

    atoms = [ManifoldAtom(v.id, v.label, simply_connected=True)
             for v in g.vertices if v.label > 0]
    records = []
    for u, w in g.sorted_edges():
        if labels[u] > 0 and labels[w] > 0:
            records.append(IntersectionRecord(frozenset((u, w)), d))
    for v in g.ids:
        if labels[v] == 0:
            records.append(IntersectionRecord(g.adjacency[v], 0, tangent_point=True))
    return CombinatorialModel(tuple(atoms), tuple(records))


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: LabelledGraph) -> str:
    lines = ["graph G {"]
    for v in sorted(g.vertices, key=lambda x: x.id):
        lines.append(f"  {_dot_id(v.id)} [label={v.label}];")
    for u, w in g.sorted_edges():
        lines.append(f"  {_dot_id(u)} -- {_dot_id(w)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


GRAPH_SCHEMA = {
    "type": "object",
    "required": ["vertices"],
    "additionalProperties": False,
    "properties": {
        "vertices": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "label"],
                "additionalProperties": False,
                "properties": {"id": {"type": "string"},
                               "label": {"type": "integer", "minimum": 0}},
            },
        },
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"},
                      "minItems": 2, "maxItems": 2},
        },
        "d": {"type": "integer", "minimum": 0},
    },
}


def graph_from_dict(doc: dict) -> LabelledGraph:
    try:
        jsonschema.validate(doc, GRAPH_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise GraphError(f"schema violation at {where}: {exc.message}") from None
    edges = [edge(u, w) for u, w in doc.get("edges", [])]
    if len(set(edges)) != len(edges):
        raise GraphError("parallel edges")
    vertices = tuple(Vertex(v["id"], v["label"]) for v in doc["vertices"])
    return LabelledGraph(vertices, frozenset(edges), doc.get("d", 0))


def graph_to_dict(g: LabelledGraph) -> dict:
    doc = {"vertices": [{"id": v.id, "label": v.label} for v in g.vertices],
           "edges": [list(e) for e in g.sorted_edges()]}
    if g.d:
        doc["d"] = g.d
    return doc


def parse_graph(text: str) -> LabelledGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return graph_from_dict(doc)


def render_graph(g: LabelledGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def load_graph(path) -> LabelledGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
