"""Differential forms with polynomial coefficients on the flat chart space.

A k-form is stored as a map from strictly increasing k-tuples of flat
indices to coefficient polynomials. Forms are evaluated on vector fields
with the determinant convention ``dx^i ^ dx^j (X, Y) = X^i Y^j - X^j Y^i``.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from .poly import Polynomial, constant

__all__ = [
    "DifferentialForm",
    "FormError",
    "wedge",
    "exterior_derivative",
    "apply_field",
    "lie_bracket",
    "evaluate_on_fields",
    "check_d_identity",
    "form_to_dict",
    "form_from_dict",
]


class FormError(ValueError):
    pass


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the sorting permutation, or 0 if an index repeats."""
    if len(set(idx)) != len(idx):
        return 0, ()
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class DifferentialForm:
    """A ``degree``-form in ``dim`` flat coordinates."""

    __slots__ = ("dim", "degree", "terms")

    def __init__(self, dim: int, degree: int, terms: Mapping[tuple[int, ...], Polynomial] | None = None):
        self.dim = dim
        self.degree = degree
        clean: dict[tuple[int, ...], Polynomial] = {}
        for idx, coeff in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 0 <= i < dim for i in idx):
                raise FormError(f"index tuple {idx} invalid for a {degree}-form in {dim} vars")
            if not isinstance(coeff, Polynomial):
                coeff = constant(dim, coeff)
            if coeff.nvars != dim:
                raise FormError("coefficient variable count differs from form dimension")
            sign, key = _sort_sign(idx)
            if sign == 0:
                continue
            clean[key] = clean.get(key, constant(dim, 0)) + sign * coeff
        self.terms = {k: v for k, v in sorted(clean.items()) if v}

    @classmethod
    def scalar(cls, f: Polynomial) -> "DifferentialForm":
        return cls(f.nvars, 0, {(): f})

    @classmethod
    def basis(cls, dim: int, *idx: int) -> "DifferentialForm":
        return cls(dim, len(idx), {tuple(idx): constant(dim, 1)})

    def _check(self, other: "DifferentialForm"):
        if self.dim != other.dim:
            raise FormError("forms live on different charts")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise FormError("cannot add forms of different degree")
        degree = self.degree if self.terms else other.degree
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return DifferentialForm(self.dim, degree, terms)

    def __neg__(self):
        return DifferentialForm(self.dim, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, f):
        """Multiply by a scalar or polynomial function."""
        if isinstance(f, DifferentialForm):
            return wedge(self, f)
        return DifferentialForm(self.dim, self.degree, {k: v * f for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.dim == other.dim
        return self.dim == other.dim and self.degree == other.degree and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[int]:
        """Flat indices appearing in a differential or a coefficient."""
        used = set()
        for idx, coeff in self.terms.items():
            used.update(idx)
            for exps in coeff.terms:
                used.update(i for i, e in enumerate(exps) if e)
        return used

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in self.terms.items())
        return f"DifferentialForm(dim={self.dim}, degree={self.degree}, {{{body}}})"


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    a._check(b)
    terms: dict[tuple[int, ...], Polynomial] = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            sign, key = _sort_sign(ia + ib)
            if sign == 0:
                continue
            prod = ca * cb if sign > 0 else -(ca * cb)
            terms[key] = terms[key] + prod if key in terms else prod
    return DifferentialForm(a.dim, a.degree + b.degree, terms)


def exterior_derivative(alpha: DifferentialForm) -> DifferentialForm:
    """``d(f dx^I) = sum_c (df/dx^c) dx^c ^ dx^I`` with exact coefficients."""
    terms: dict[tuple[int, ...], Polynomial] = {}
    for idx, coeff in alpha.terms.items():
        for c in range(alpha.dim):
            if c in idx:
                continue
            part = coeff.diff(c)
            if not part:
                continue
            sign, key = _sort_sign((c,) + idx)
            part = part if sign > 0 else -part
            terms[key] = terms[key] + part if key in terms else part
    return DifferentialForm(alpha.dim, alpha.degree + 1, terms)


def apply_field(X: Sequence[Polynomial], f: Polynomial) -> Polynomial:
    """Directional derivative ``X(f) = sum_j X^j df/dx^j``."""
    out = constant(f.nvars, 0)
    for j, xj in enumerate(X):
        if xj:
            out = out + xj * f.diff(j)
    return out


def lie_bracket(X: Sequence[Polynomial], Y: Sequence[Polynomial]) -> list[Polynomial]:
    return [apply_field(X, Y[i]) - apply_field(Y, X[i]) for i in range(len(X))]


def _det_sign(perm) -> int:
    sign, _ = _sort_sign(perm)
    return sign


def evaluate_on_fields(omega: DifferentialForm, fields: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """The function ``omega(X_1, ..., X_k)``."""
    if len(fields) != omega.degree:
        raise FormError(f"{omega.degree}-form needs {omega.degree} fields")
    for X in fields:
        if len(X) != omega.dim:
            raise FormError("vector field has wrong length")
    out = constant(omega.dim, 0)
    k = omega.degree
    for idx, coeff in omega.terms.items():
        det = constant(omega.dim, 0)
        for perm in permutations(range(k)):
            term = constant(omega.dim, _det_sign(perm))
            for row, col in enumerate(perm):
                term = term * fields[col][idx[row]]
            det = det + term
        out = out + coeff * det
    return out


def _as_fields(dim, X):
    out = []
    for c in X:
        out.append(c if isinstance(c, Polynomial) else constant(dim, c))
    if len(out) != dim:
        raise FormError("vector field has wrong length")
    return out


def check_d_identity(omega: DifferentialForm, X, Y, points=None, exact: bool = True,
                     seed: int = 0, n_points: int = 16) -> float:
    """Residual of ``d omega(X,Y) = X(omega(Y)) - Y(omega(X)) - omega([X,Y])``.

    With ``exact`` the residual polynomial is formed in rational arithmetic
    and 0.0 is returned when it vanishes identically. Otherwise both sides are
    evaluated separately in floating point and the largest absolute gap over
    the sample points is returned.
    """
    if omega.degree != 1:
        raise FormError("identity applies to 1-forms")
    X = _as_fields(omega.dim, X)
    Y = _as_fields(omega.dim, Y)
    for f in list(X) + list(Y):
        if f.nvars != omega.dim:
            raise FormError("field and form live on different charts")
    lhs = evaluate_on_fields(exterior_derivative(omega), [X, Y])
    rhs = (apply_field(X, evaluate_on_fields(omega, [Y]))
           - apply_field(Y, evaluate_on_fields(omega, [X]))
           - evaluate_on_fields(omega, [lie_bracket(X, Y)]))
    if points is None:
        rng = random.Random(seed)
        points = [[rng.uniform(-1.0, 1.0) for _ in range(omega.dim)] for _ in range(n_points)]
    if exact:
        residual = lhs - rhs
        if not residual:
            return 0.0
        return max(abs(float(residual([Fraction(p) for p in pt]))) for pt in points)
    return max(abs(lhs([float(p) for p in pt]) - rhs([float(p) for p in pt])) for pt in points)


def form_to_dict(alpha: DifferentialForm) -> dict:
    return {"dim": alpha.dim, "degree": alpha.degree,
            "terms": [{"indices": list(k), "coefficient": v.to_terms()}
                      for k, v in alpha.terms.items()]}


def form_from_dict(doc: dict) -> DifferentialForm:
    try:
        dim, degree = int(doc["dim"]), int(doc["degree"])
        terms: dict = {}
        for t in doc["terms"]:
            key = tuple(t["indices"])
            poly = Polynomial.from_terms(dim, t["coefficient"])
            terms[key] = terms[key] + poly if key in terms else poly
        return DifferentialForm(dim, degree, terms)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormError(f"malformed form document: {exc}") from None
