"""Local chart shapes at a point where several manifolds meet.

At a point where ``s`` manifolds of dimensions ``n_1 <= ... <= n_s`` meet in
a common piece of dimension ``shat``, the chart coordinates form an
``s x n_s`` matrix whose first ``shat`` columns coincide across rows. All
computation uses the flattened coordinate space of dimension

    D = shat + sum(n_i - shat)

with the shared coordinates first and then each manifold's own tail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChartSpec",
    "ChartError",
    "TangentVector",
    "tangent_dimension",
    "tensor_space_dimension",
    "flat_index",
    "flat_pairs",
    "manifold_block",
    "matrix_inner",
    "vector_from_matrix",
]


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class ChartSpec:
    s: int
    shat: int
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if self.s < 1 or len(self.dims) != self.s:
            raise ChartError(f"need s >= 1 dimensions, got s={self.s}, dims={self.dims}")
        if list(self.dims) != sorted(self.dims):
            raise ChartError("dims must be non-decreasing")
        if self.shat < 1 or self.shat > min(self.dims):
            raise ChartError(f"shat must lie in [1, min(dims)], got {self.shat}")

    @property
    def D(self) -> int:
        return tangent_dimension(self)

    @property
    def n_max(self) -> int:
        return max(self.dims)

    @classmethod
    def from_dict(cls, doc: dict) -> "ChartSpec":
        return cls(int(doc["s"]), int(doc["shat"]), tuple(doc["dims"]))

    def to_dict(self) -> dict:
        return {"s": self.s, "shat": self.shat, "dims": list(self.dims)}


def tangent_dimension(chart: ChartSpec) -> int:
    return chart.shat + sum(n - chart.shat for n in chart.dims)


def tensor_space_dimension(chart: ChartSpec, r: int, s_count: int) -> int:
    if r < 0 or s_count < 0:
        raise ChartError("tensor type must be non-negative")
    return tangent_dimension(chart) ** (r + s_count)


def _tail_offsets(chart: ChartSpec) -> list[int]:
    offsets = []
    pos = chart.shat
    for n in chart.dims:
        offsets.append(pos)
        pos += n - chart.shat
    return offsets


def flat_index(chart: ChartSpec, mu: int, nu: int) -> int:
    """Flat position of coordinate pair ``(mu, nu)``; both 1-based."""
    if not 1 <= mu <= chart.s or not 1 <= nu <= chart.dims[mu - 1]:
        raise ChartError(f"pair ({mu}, {nu}) outside chart")
    if nu <= chart.shat:
        return nu - 1
    return _tail_offsets(chart)[mu - 1] + (nu - chart.shat - 1)


def flat_pairs(chart: ChartSpec) -> list[tuple[int, int]]:
    """Canonical pair for each flat index; shared ones use row 1."""
    out = [(1, l) for l in range(1, chart.shat + 1)]
    for i, n in enumerate(chart.dims, start=1):
        out.extend((i, l) for l in range(chart.shat + 1, n + 1))
    return out


def manifold_block(chart: ChartSpec, i: int) -> list[int]:
    """Flat indices of the coordinates of the ``i``-th manifold (0-based)."""
    start = _tail_offsets(chart)[i]
    return list(range(chart.shat)) + list(range(start, start + chart.dims[i] - chart.shat))


def matrix_inner(a, b) -> float:
    """Entrywise product sum of two equally shaped matrices."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ChartError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.sum(a * b))


@dataclass(frozen=True)
class TangentVector:
    chart: ChartSpec
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        if coeffs.shape != (self.chart.D,):
            raise ChartError(f"expected {self.chart.D} coefficients, got {coeffs.shape}")
        object.__setattr__(self, "coeffs", coeffs)


def vector_from_matrix(chart: ChartSpec, vmat) -> TangentVector:
    """Flatten an ``s x n_max`` functional matrix onto the flat basis.

    Shared columns are summed over rows and divided by ``shat``; a chart of a
    single manifold has no identification, so its row is taken as is.
    """
    vmat = np.asarray(vmat, dtype=float)
    if vmat.shape != (chart.s, chart.n_max):
        raise ChartError(f"matrix must be {chart.s} x {chart.n_max}, got {vmat.shape}")
    for i, n in enumerate(chart.dims):
        if np.any(vmat[i, n:] != 0):
            raise ChartError(f"nonzero entry beyond column {n} in row {i + 1}")
    out = np.zeros(chart.D)
    if chart.s == 1:
        out[:] = vmat[0, :chart.dims[0]]
        return TangentVector(chart, out)
    out[:chart.shat] = vmat[:, :chart.shat].sum(axis=0) / chart.shat
    for i, n in enumerate(chart.dims):
        for l in range(chart.shat, n):
            out[flat_index(chart, i + 1, l + 1)] = vmat[i, l]
    return TangentVector(chart, out)
