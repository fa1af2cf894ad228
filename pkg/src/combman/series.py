"""Truncated multivariate counting series with exact integer coefficients."""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial
from typing import Mapping

from .classify import automorphism_orbits, label_classes
from .skeleton import LabelledGraph

__all__ = [
    "EnuSeries",
    "SeriesError",
    "add",
    "mul",
    "scale",
    "embed",
    "one",
    "zero",
    "surface_enufunction",
    "ModelEnufunction",
    "model_enufunction",
    "complete_multipartite_parts",
    "series_to_dict",
    "series_from_dict",
    "load_series_map",
]


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class EnuSeries:
    """Polynomial truncated at total degree ``truncation``.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero ints.
    """

    variables: tuple[str, ...]
    terms: Mapping[tuple[int, ...], int]
    truncation: int

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        n = len(self.variables)
        if len(set(self.variables)) != n:
            raise SeriesError("repeated variable name")
        if self.truncation < 0:
            raise SeriesError("truncation must be >= 0")
        clean = {}
        for exps, c in dict(self.terms).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise SeriesError(f"bad exponent vector {exps}")
            if int(c) != c:
                raise SeriesError(f"non-integer coefficient {c}")
            if c and sum(exps) <= self.truncation:
                clean[exps] = clean.get(exps, 0) + int(c)
        object.__setattr__(self, "terms", {k: v for k, v in sorted(clean.items()) if v})

    def __eq__(self, other):
        if not isinstance(other, EnuSeries):
            return NotImplemented
        return (self.variables == other.variables and self.truncation == other.truncation
                and dict(self.terms) == dict(other.terms))

    def __hash__(self):
        return hash((self.variables, self.truncation, tuple(self.terms.items())))

    def coefficient(self, *exps: int) -> int:
        return self.terms.get(tuple(exps), 0)

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        if isinstance(other, EnuSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms.items():
            mono = "*".join(v if e == 1 else f"{v}^{e}"
                            for v, e in zip(self.variables, exps) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def _check_compatible(a: EnuSeries, b: EnuSeries) -> None:
    if a.variables != b.variables:
        raise SeriesError(f"variable mismatch: {a.variables} vs {b.variables}")


def add(a: EnuSeries, b: EnuSeries) -> EnuSeries:
    _check_compatible(a, b)
    terms = dict(a.terms)
    for k, v in b.terms.items():
        terms[k] = terms.get(k, 0) + v
    return EnuSeries(a.variables, terms, min(a.truncation, b.truncation))


def mul(a: EnuSeries, b: EnuSeries) -> EnuSeries:
    _check_compatible(a, b)
    trunc = min(a.truncation, b.truncation)
    terms: dict[tuple[int, ...], int] = {}
    for ka, va in a.terms.items():
        da = sum(ka)
        for kb, vb in b.terms.items():
            if da + sum(kb) > trunc:
                continue
            k = tuple(x + y for x, y in zip(ka, kb))
            terms[k] = terms.get(k, 0) + va * vb
    return EnuSeries(a.variables, terms, trunc)


def scale(a: EnuSeries, k: int) -> EnuSeries:
    return EnuSeries(a.variables, {e: k * c for e, c in a.terms.items()}, a.truncation)


def embed(a: EnuSeries, variables) -> EnuSeries:
    """Re-express ``a`` over a superset of its variables."""
    variables = tuple(variables)
    missing = set(a.variables) - set(variables)
    if missing:
        raise SeriesError(f"cannot drop variables {sorted(missing)}")
    pos = [variables.index(v) for v in a.variables]
    terms = {}
    for exps, c in a.terms.items():
        full = [0] * len(variables)
        for p, e in zip(pos, exps):
            full[p] = e
        terms[tuple(full)] = c
    return EnuSeries(variables, terms, a.truncation)


def one(variables, truncation: int) -> EnuSeries:
    variables = tuple(variables)
    return EnuSeries(variables, {(0,) * len(variables): 1}, truncation)


def zero(variables, truncation: int) -> EnuSeries:
    return EnuSeries(tuple(variables), {}, truncation)


def surface_enufunction(max_genus: int, variable: str = "x_2_1") -> EnuSeries:
    """Closed surfaces counted by genus: one sphere, then two surfaces per genus."""
    if max_genus < 0:
        raise SeriesError("max_genus must be >= 0")
    terms = {(0,): 1}
    terms.update({(p,): 2 for p in range(1, max_genus + 1)})
    return EnuSeries((variable,), terms, max_genus)


def complete_multipartite_parts(g: LabelledGraph) -> list[frozenset[str]] | None:
    """Parts of ``g`` if it is complete multipartite with >= 2 parts, else None.

    Parts are the classes of the non-adjacency relation, which must be an
    equivalence relation with every cross pair adjacent.
    """
    ids = g.ids
    adj = g.adjacency
    parts: list[set[str]] = []
    for v in ids:
        for p in parts:
            rep = next(iter(p))
            if rep not in adj[v]:
                p.add(v)
                break
        else:
            parts.append({v})
    if len(parts) < 2:
        return None
    for i, p in enumerate(parts):
        for u in p:
            if adj[u] & p:
                return None
            others = set(ids) - p
            if adj[u] != others:
                return None
    return [frozenset(p) for p in parts]


@dataclass(frozen=True)
class ModelEnufunction:
    """Enumeration series for one labelled skeleton.

    ``series`` is ``pi0! * prod(per-class series)``. When the graph is a
    complete graph or a complete multipartite graph with single-label parts,
    ``clause`` names that case and ``clause_factor``/``clause_series`` hold
    the closed-form factor claimed for it, which can differ from ``pi0!``.
    """

    series: EnuSeries
    pi0: int
    pi0_factor: int
    product: EnuSeries
    clause: str | None = None
    clause_factor: int | None = None
    clause_series: EnuSeries | None = None

    @property
    def factors_agree(self) -> bool:
        return self.clause_factor is None or self.clause_factor == self.pi0_factor


def model_enufunction(g: LabelledGraph, per_dim_series: Mapping[int, EnuSeries],
                      truncation: int | None = None) -> ModelEnufunction:
    """Enufunction of the models realizing ``g``.

    Parameters
    ----------
    g : LabelledGraph
        Skeleton with every label >= 1.
    per_dim_series : mapping of int to EnuSeries
        Counting series of the manifolds of each dimension. Series of
        different dimensions must use disjoint variable names.
    truncation : int, optional
        Total-degree cutoff of the result; defaults to the smallest input
        truncation.
    """
    classes = label_classes(g)
    if 0 in classes:
        raise SeriesError("enufunction needs every label >= 1")
    missing = [k for k in classes if k not in per_dim_series]
    if missing:
        raise SeriesError(f"missing series for labels {missing}")
    factors = [per_dim_series[k] for k in classes]
    variables: list[str] = []
    for s in factors:
        for v in s.variables:
            if v in variables:
                raise SeriesError(f"variable {v!r} shared between dimensions")
            variables.append(v)
    trunc = min(s.truncation for s in factors)
    if truncation is not None:
        trunc = min(trunc, truncation)
    product = one(variables, trunc)
    for s in factors:
        product = mul(product, embed(s, variables))

    pi0 = automorphism_orbits(g).pi0
    pi0_factor = factorial(pi0)
    clause = clause_factor = clause_series = None
    m = len(classes)
    if len(g.vertices) > 1 and len(g.edges) == len(g.vertices) * (len(g.vertices) - 1) // 2:
        clause, clause_factor = "complete", 1
    else:
        parts = complete_multipartite_parts(g)
        if parts is not None and all(len({g.labels[v] for v in p}) == 1 for p in parts):
            clause, clause_factor = "complete-multipartite", factorial(m)
    if clause_factor is not None:
        clause_series = scale(product, clause_factor)
    return ModelEnufunction(scale(product, pi0_factor), pi0, pi0_factor, product,
                            clause, clause_factor, clause_series)


def series_to_dict(s: EnuSeries) -> dict:
    return {"variables": list(s.variables), "truncation": s.truncation,
            "terms": [{"exponents": list(k), "coefficient": v} for k, v in s.terms.items()]}


def series_from_dict(doc: dict) -> EnuSeries:
    try:
        terms = {}
        for t in doc["terms"]:
            key = tuple(t["exponents"])
            terms[key] = terms.get(key, 0) + t["coefficient"]
        return EnuSeries(tuple(doc["variables"]), terms, doc["truncation"])
    except (KeyError, TypeError) as exc:
        raise SeriesError(f"malformed series document: {exc}") from None


def load_series_map(path) -> dict[int, EnuSeries]:
    """Read ``{"<dim>": <series>, ...}`` from a JSON file."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return {int(k): series_from_dict(v) for k, v in doc.items()}
