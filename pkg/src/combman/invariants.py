"""Clique sequence, Euler characteristic and fundamental d-group rank."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .model import CombinatorialModel, ModelError, _require_valid
from .skeleton import LabelledGraph, build_graph, cycle_rank, is_connected

__all__ = [
    "CliqueSequence",
    "RankResult",
    "InvariantError",
    "max_clique_size",
    "cliques_of_size",
    "clique_sequence",
    "intersection_euler_table",
    "euler_characteristic",
    "euler_k3free_crosscheck",
    "fundamental_group_rank",
    "is_simply_d_connected",
    "invariants_report",
]


class InvariantError(ModelError):
    pass


@dataclass(frozen=True)
class CliqueSequence:
    """Batches of cliques; each batch uses the clique number of what is left."""

    levels: tuple[tuple[tuple[str, ...], ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(batch[0]) for batch in self.levels]

    def edges(self):
        for batch in self.levels:
            for clique in batch:
                for u, w in combinations(clique, 2):
                    yield frozenset((u, w))

    def as_lists(self) -> list[list[list[str]]]:
        return [[list(c) for c in batch] for batch in self.levels]


def _adjacency(vertices, edges) -> dict[str, set[str]]:
    adj = {v: set() for v in vertices}
    for e in edges:
        u, w = tuple(e)
        adj[u].add(w)
        adj[w].add(u)
    return adj


def max_clique_size(adj: dict[str, set[str]]) -> int:
    """Clique number by Bron-Kerbosch with pivoting."""
    best = 0

    def expand(size, cand, excl):
        nonlocal best
        if not cand and not excl:
            best = max(best, size)
            return
        if size + len(cand) <= best:
            return
        pivot = max(cand | excl, key=lambda u: len(adj[u] & cand))
        for v in sorted(cand - adj[pivot]):
            expand(size + 1, cand & adj[v], excl & adj[v])
            cand = cand - {v}
            excl = excl | {v}

    expand(0, set(adj), set())
    return best


def cliques_of_size(adj: dict[str, set[str]], k: int):
    """All k-cliques as sorted tuples, in lexicographic order."""
    order = sorted(adj)

    def extend(prefix, cand):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for i, v in enumerate(cand):
            yield from extend(prefix + [v], [w for w in cand[i + 1:] if w in adj[v]])

    yield from extend([], order)


def clique_sequence(g: LabelledGraph) -> CliqueSequence:
    """Greedy batching of edge-disjoint maximum cliques.

    At each step the clique number ``l`` of the residual graph is found; the
    ``l``-cliques are scanned in lexicographic order and each one is kept if
    it shares at most one vertex with every clique already kept. The edges of
    the kept cliques are removed and the process repeats until no edge is
    left.
    """
    residual = set(g.edges)
    levels = []
    while residual:
        adj = _adjacency(g.ids, residual)
        size = max_clique_size(adj)
        batch: list[tuple[str, ...]] = []
        for clique in cliques_of_size(adj, size):
            cs = set(clique)
            if all(len(cs.intersection(c)) <= 1 for c in batch):
                batch.append(clique)
        for clique in batch:
            for u, w in combinations(clique, 2):
                residual.discard(frozenset((u, w)))
        levels.append(tuple(batch))
    return CliqueSequence(tuple(levels))


def intersection_euler_table(model: CombinatorialModel) -> dict[frozenset, int]:
    """Euler characteristic of every nonempty common intersection of >= 2 atoms.

    A recorded intersection contributes its own value. A tangent point shared
    by a set S of atoms also lies in the common intersection of every subset
    of S, and adds 1 to each of those (isolated points are disjoint from the
    recorded intersections).
    """
    _require_valid(model)
    table: dict[frozenset, int] = {}
    for r in model.solid_records:
        if r.euler is None:
            raise InvariantError(f"missing euler characteristic for intersection {r.key}")
        table[r.atoms] = r.euler
    for r in model.tangent_records:
        members = sorted(r.atoms)
        for k in range(2, len(members) + 1):
            for sub in combinations(members, k):
                key = frozenset(sub)
                table[key] = table.get(key, 0) + 1
    return table


def _atom_euler(model: CombinatorialModel) -> int:
    total = 0
    for a in model.atoms:
        if a.euler is None:
            raise InvariantError(f"missing euler characteristic for atom {a.id!r}")
        total += a.euler
    return total


def euler_characteristic(model: CombinatorialModel) -> int:
    """Inclusion-exclusion over the intersection table.

    Every atom is counted once, every intersection of ``s`` atoms enters with
    sign ``(-1)**(s+1)``; unlisted multi-way intersections are empty.
    """
    total = _atom_euler(model)
    for atoms, chi in intersection_euler_table(model).items():
        total += (-1) ** (len(atoms) + 1) * chi
    return total


def euler_k3free_crosscheck(model: CombinatorialModel) -> int:
    """Sum of atom characteristics minus pairwise ones, for triangle-free nerves.

    The pair graph joins two atoms whenever they meet at all, including
    contacts of dimension 0 that have no edge in G^1. A triangle there means
    the shortcut does not apply.
    """
    chi = _atom_euler(model)
    table = intersection_euler_table(model)
    pairs = [s for s in table if len(s) == 2]
    if any(len(s) > 2 for s in table):
        raise InvariantError("not K3-free: multi-way intersection present")
    adj = _adjacency(model.atom_ids, pairs)
    for u, w in (tuple(sorted(p)) for p in pairs):
        common = adj[u] & adj[w]
        if common:
            raise InvariantError(f"not K3-free: triangle {u}, {w}, {min(common)}")
    return chi - sum(table[p] for p in pairs)


@dataclass(frozen=True)
class RankResult:
    total: int
    atom_part: dict[str, int]
    graph_part: int

    def to_dict(self) -> dict:
        return {"total": self.total, "atom_part": dict(sorted(self.atom_part.items())),
                "graph_part": self.graph_part}


def fundamental_group_rank(model: CombinatorialModel, d: int) -> RankResult:
    """Rank of the fundamental d-group: atom ranks plus the cycle rank of G^d."""
    _require_valid(model)
    n1 = min(model.dims)
    if d < 1 or d > n1:
        raise InvariantError(f"d must satisfy 1 <= d <= n_1 = {n1}, got {d}")
    parts = {}
    for a in model.atoms:
        r = a.rank(d)
        if r is None:
            raise InvariantError(f"missing rank data at d={d} for atom {a.id!r}")
        parts[a.id] = r
    beta = cycle_rank(build_graph(model, d))
    return RankResult(sum(parts.values()) + beta, parts, beta)


def is_simply_d_connected(model: CombinatorialModel, d: int) -> bool:
    if not is_connected(build_graph(model, d)):
        raise InvariantError(f"not d-connected at d={d}")
    res = fundamental_group_rank(model, d)
    return res.total == 0


def invariants_report(model: CombinatorialModel, d: int = 1) -> dict:
    """Report document with euler, rank and clique levels of G^d."""
    g = build_graph(model, d)
    return {
        "euler": euler_characteristic(model),
        "rank": fundamental_group_rank(model, d).to_dict(),
        "clique_levels": clique_sequence(g).as_lists(),
    }
