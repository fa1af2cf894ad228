"""Multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

__all__ = ["Polynomial", "coordinate", "constant"]


class Polynomial:
    """Sparse polynomial in ``nvars`` variables ``x0 .. x{n-1}``.

    Immutable after construction; ``terms`` maps exponent tuples to nonzero
    Fractions.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length for {nvars} vars")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable counts")
            return other
        return constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return Polynomial(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                terms[k] = terms.get(k, 0) + va * vb
        return Polynomial(self.nvars, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for exps, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(exps) if e)
            out.append(f"{c}" if not mono else (mono if c == 1 else f"({c})*{mono}"))
        return " + ".join(out)

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def diff(self, i: int) -> "Polynomial":
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                k = exps[:i] + (e - 1,) + exps[i + 1:]
                terms[k] = c * e
        return Polynomial(self.nvars, terms)

    def __call__(self, point: Sequence):
        """Evaluate; exact if the point holds ints/Fractions, float otherwise."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        exact = all(isinstance(p, (int, Fraction)) for p in point)
        total = Fraction(0) if exact else 0.0
        for exps, c in self.terms.items():
            term = c if exact else float(c)
            for p, e in zip(point, exps):
                if e:
                    term = term * p ** e
            total += term
        return total

    def to_terms(self) -> list[dict]:
        return [{"exponents": list(k), "coefficient": str(v)}
                for k, v in sorted(self.terms.items())]

    @classmethod
    def from_terms(cls, nvars: int, items) -> "Polynomial":
        terms: dict = {}
        for t in items:
            k = tuple(t["exponents"])
            terms[k] = terms.get(k, 0) + Fraction(t["coefficient"])
        return cls(nvars, terms)


def constant(nvars: int, c) -> Polynomial:
    return Polynomial(nvars, {(0,) * nvars: c})


def coordinate(nvars: int, i: int) -> Polynomial:
    exps = [0] * nvars
    exps[i] = 1
    return Polynomial(nvars, {tuple(exps): 1})
