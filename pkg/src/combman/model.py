"""Data model for finitely combinatorial manifolds.

A model is a finite collection of constituent manifolds ("atoms") together
with a table of their nonempty common intersections. Topological invariants
of the atoms (Euler characteristic, homotopy ranks) are metadata supplied by
the user; nothing here triangulates a manifold.

The serialized form is a JSON document::

    {"atoms": [{"id": "T", "dim": 2, "euler": 0, "pi_rank": {"1": 2}}],
     "intersections": [{"atoms": ["T", "C"], "dim": 1, "euler": 0}]}
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

import jsonschema

__all__ = [
    "Genus",
    "ManifoldAtom",
    "IntersectionRecord",
    "CombinatorialModel",
    "Violation",
    "ValidationReport",
    "ModelError",
    "ModelParseError",
    "ModelValidationError",
    "MODEL_SCHEMA",
    "validate_model",
    "dimension_sequence",
    "parse_model",
    "render_model",
    "model_to_dict",
    "model_from_dict",
    "load_model",
    "save_model",
    "make_model",
]


class ModelError(ValueError):
    """Base class for model errors."""


class ModelParseError(ModelError):
    """The serialized text is not well formed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ModelValidationError(ModelError):
    """The document or model breaks a schema or model invariant."""

    def __init__(self, message: str, report: "ValidationReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Genus:
    orientable: bool
    value: int

    def euler(self) -> int:
        return 2 - 2 * self.value if self.orientable else 2 - self.value


@dataclass(frozen=True)
class ManifoldAtom:
    """One constituent manifold.

    ``pi_rank`` maps ``d >= 1`` to the abelianized rank of the fundamental
    d-group of the atom. It is stored as a sorted tuple of pairs so atoms stay
    hashable; pass a plain dict when constructing.
    """

    id: str
    dim: int
    euler: int | None = None
    pi_rank: tuple[tuple[int, int], ...] = ()
    simply_connected: bool = False
    genus: Genus | None = None

    def __post_init__(self):
        ranks = self.pi_rank.items() if isinstance(self.pi_rank, Mapping) else self.pi_rank
        object.__setattr__(self, "pi_rank", tuple(sorted((int(k), int(v)) for k, v in ranks)))

    def rank(self, d: int) -> int | None:
        """Rank of the fundamental d-group, ``None`` when not supplied."""
        for k, v in self.pi_rank:
            if k == d:
                return v
        return 0 if self.simply_connected else None


@dataclass(frozen=True)
class IntersectionRecord:
    """Nonempty common intersection of a set of atoms.

    A tangent-point record stands for one isolated point shared by its
    atoms; its Euler characteristic is fixed to 1.
    """

    atoms: frozenset[str]
    dim: int
    euler: int | None = None
    tangent_point: bool = False

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        if self.tangent_point and self.euler is None:
            object.__setattr__(self, "euler", 1)

    @property
    def key(self) -> str:
        return "{" + ",".join(sorted(self.atoms)) + "}"


@dataclass(frozen=True, eq=False)
class CombinatorialModel:
    atoms: tuple[ManifoldAtom, ...]
    intersections: tuple[IntersectionRecord, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "intersections", tuple(self.intersections))

    def __eq__(self, other):
        # structural equality ignoring ordering; tangent records may repeat
        if not isinstance(other, CombinatorialModel):
            return NotImplemented
        return (Counter(self.atoms) == Counter(other.atoms)
                and Counter(self.intersections) == Counter(other.intersections))

    def __hash__(self):
        return hash((frozenset(self.atoms), frozenset(self.intersections)))

    @property
    def atom_ids(self) -> list[str]:
        return [a.id for a in self.atoms]

    def atom(self, atom_id: str) -> ManifoldAtom:
        for a in self.atoms:
            if a.id == atom_id:
                return a
        raise KeyError(atom_id)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(sorted({a.dim for a in self.atoms}))

    @property
    def tangent_records(self) -> list[IntersectionRecord]:
        return [r for r in self.intersections if r.tangent_point]

    @property
    def solid_records(self) -> list[IntersectionRecord]:
        return [r for r in self.intersections if not r.tangent_point]


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    ids: tuple[str, ...] = ()

    def __str__(self):
        where = f" [{', '.join(self.ids)}]" if self.ids else ""
        return f"{self.code}: {self.message}{where}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    advisories: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def validate_model(model: CombinatorialModel) -> ValidationReport:
    """Check every model invariant and return the violations found.

    The model is never modified and no exception is raised for bad data, so
    the report can list several problems at once.
    """
    out: list[Violation] = []
    if not model.atoms:
        out.append(Violation("empty-model", "empty model"))

    by_id: dict[str, ManifoldAtom] = {}
    for a in model.atoms:
        if a.id in by_id:
            out.append(Violation("duplicate-id", f"duplicate id {a.id!r}", (a.id,)))
        by_id[a.id] = a
        if a.dim < 1:
            out.append(Violation("atom-dim", "atom dimension must be >= 1", (a.id,)))
        for k, v in a.pi_rank:
            if k < 1 or v < 0:
                out.append(Violation("pi-rank", f"bad rank entry {k}: {v}", (a.id,)))
            elif a.simply_connected and v != 0:
                out.append(Violation("pi-rank",
                                     f"simply connected atom has rank {v} at d={k}", (a.id,)))
        if a.genus is not None:
            if a.dim != 2:
                out.append(Violation("genus", "genus given for a non-surface", (a.id,)))
            if a.genus.value < 0:
                out.append(Violation("genus", "negative genus", (a.id,)))
            elif a.euler is not None and a.euler != a.genus.euler():
                out.append(Violation("genus", f"euler {a.euler} does not match genus "
                                     f"(expected {a.genus.euler()})", (a.id,)))

    solid_sets: dict[frozenset, IntersectionRecord] = {}
    for r in model.intersections:
        ids = tuple(sorted(r.atoms))
        if len(r.atoms) < 2:
            out.append(Violation("intersection-size", "intersection needs at least 2 atoms", ids))
        unknown = [i for i in ids if i not in by_id]
        if unknown:
            out.append(Violation("unknown-atom", f"unknown atom ids {unknown}", ids))
        if r.dim < 0:
            out.append(Violation("intersection-dim", "negative intersection dim", ids))
        known = [by_id[i].dim for i in ids if i in by_id]
        if known and r.dim > min(known):
            out.append(Violation("intersection-dim",
                                 "intersection dim exceeds min atom dim", ids))
        if r.tangent_point:
            if r.dim != 0 or r.euler != 1:
                out.append(Violation("tangent-point",
                                     "tangent point must have dim 0 and euler 1", ids))
        else:
            if r.atoms in solid_sets:
                out.append(Violation("duplicate-intersection",
                                     "two intersection records cover the same atoms", ids))
            solid_sets[r.atoms] = r

    # A common intersection of S sits inside the intersection of every subset of S.
    for atoms, r in solid_sets.items():
        if len(atoms) < 3:
            continue
        for k in range(2, len(atoms)):
            for sub in combinations(sorted(atoms), k):
                parent = solid_sets.get(frozenset(sub))
                if parent is None:
                    out.append(Violation("missing-sub-intersection",
                                         f"no record for sub-intersection {{{','.join(sub)}}}",
                                         tuple(sorted(atoms))))
                elif parent.dim < r.dim:
                    out.append(Violation("sub-intersection-dim",
                                         f"sub-intersection {{{','.join(sub)}}} has smaller dim",
                                         tuple(sorted(atoms))))
    return ValidationReport(tuple(out))


def _require_valid(model: CombinatorialModel) -> None:
    report = validate_model(model)
    if not report.ok:
        raise ModelValidationError("invalid model: " + "; ".join(map(str, report.violations)),
                                   report)


def dimension_sequence(model: CombinatorialModel) -> tuple[int, ...]:
    """Sorted distinct atom dimensions ``n_1 < ... < n_m``."""
    _require_valid(model)
    return model.dims


MODEL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["atoms"],
    "additionalProperties": False,
    "properties": {
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "dim"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "dim": {"type": "integer"},
                    "euler": {"type": ["integer", "null"]},
                    "pi_rank": {
                        "type": "object",
                        "patternProperties": {"^[0-9]+$": {"type": "integer"}},
                        "additionalProperties": False,
                    },
                    "simply_connected": {"type": "boolean"},
                    "genus": {
                        "type": ["object", "null"],
                        "required": ["orientable", "value"],
                        "additionalProperties": False,
                        "properties": {
                            "orientable": {"type": "boolean"},
                            "value": {"type": "integer"},
                        },
                    },
                },
            },
        },
        "intersections": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["atoms", "dim"],
                "additionalProperties": False,
                "properties": {
                    "atoms": {"type": "array", "items": {"type": "string"}},
                    "dim": {"type": "integer"},
                    "euler": {"type": ["integer", "null"]},
                    "tangent_point": {"type": "boolean"},
                },
            },
        },
    },
}


def model_from_dict(doc: dict) -> CombinatorialModel:
    """Build a model from a decoded document, checking the schema first."""
    try:
        jsonschema.validate(doc, MODEL_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ModelValidationError(f"schema violation at {where}: {exc.message}") from None

    atoms = []
    seen = set()
    for a in doc["atoms"]:
        if a["id"] in seen:
            raise ModelValidationError(f"duplicate id {a['id']!r}")
        seen.add(a["id"])
        genus = a.get("genus")
        atoms.append(ManifoldAtom(
            id=a["id"],
            dim=a["dim"],
            euler=a.get("euler"),
            pi_rank={int(k): v for k, v in a.get("pi_rank", {}).items()},
            simply_connected=a.get("simply_connected", False),
            genus=Genus(genus["orientable"], genus["value"]) if genus else None,
        ))
    records = []
    for i, r in enumerate(doc.get("intersections", [])):
        if len(set(r["atoms"])) != len(r["atoms"]):
            raise ModelValidationError(f"intersections/{i}: repeated atom id")
        records.append(IntersectionRecord(
            atoms=frozenset(r["atoms"]),
            dim=r["dim"],
            euler=r.get("euler"),
            tangent_point=r.get("tangent_point", False),
        ))
    return CombinatorialModel(tuple(atoms), tuple(records))


def model_to_dict(model: CombinatorialModel) -> dict:
    atoms = []
    for a in model.atoms:
        entry: dict = {"id": a.id, "dim": a.dim}
        if a.euler is not None:
            entry["euler"] = a.euler
        if a.pi_rank:
            entry["pi_rank"] = {str(k): v for k, v in a.pi_rank}
        if a.simply_connected:
            entry["simply_connected"] = True
        if a.genus is not None:
            entry["genus"] = {"orientable": a.genus.orientable, "value": a.genus.value}
        atoms.append(entry)
    records = []
    for r in model.intersections:
        entry = {"atoms": sorted(r.atoms), "dim": r.dim}
        if r.euler is not None and not (r.tangent_point and r.euler == 1):
            entry["euler"] = r.euler
        if r.tangent_point:
            entry["tangent_point"] = True
        records.append(entry)
    return {"atoms": atoms, "intersections": records}


def parse_model(text: str) -> CombinatorialModel:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(exc.msg, exc.lineno, exc.colno) from None
    return model_from_dict(doc)


def render_model(model: CombinatorialModel) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def load_model(path) -> CombinatorialModel:
    with open(path, encoding="utf-8") as fh:
        return parse_model(fh.read())


def save_model(model: CombinatorialModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_model(model))


def make_model(atoms: Iterable[ManifoldAtom],
               intersections: Iterable[IntersectionRecord] = ()) -> CombinatorialModel:
    return CombinatorialModel(tuple(atoms), tuple(intersections))
