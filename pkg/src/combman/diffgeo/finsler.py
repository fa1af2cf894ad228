"""Minkowski norms on flat tangent spaces and their partition-of-unity gluing."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .chart import ChartSpec, manifold_block

__all__ = [
    "MinkowskiNorm",
    "MinkowskiReport",
    "NormError",
    "HESSIAN_STEP",
    "HOMOGENEITY_TOL",
    "WEIGHT_TOL",
    "hessian_half_square",
    "minkowski_check",
    "build_partition_norm",
    "euclidean_norm",
]

HESSIAN_STEP = 1e-4
HOMOGENEITY_TOL = 1e-9
WEIGHT_TOL = 1e-9


class NormError(ValueError):
    pass


@dataclass(frozen=True)
class MinkowskiNorm:
    dim: int
    F: Callable[[np.ndarray], float]

    def __call__(self, v) -> float:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise NormError(f"vector of length {v.size} given to a norm on R^{self.dim}")
        return float(self.F(v))


def euclidean_norm(dim: int, scale: float = 1.0) -> MinkowskiNorm:
    return MinkowskiNorm(dim, lambda v: scale * float(np.linalg.norm(v)))


def hessian_half_square(F: MinkowskiNorm, y, h: float = HESSIAN_STEP) -> np.ndarray:
    """Central-difference Hessian of ``F(y)^2 / 2``."""
    y = np.asarray(y, dtype=float)
    n = y.size
    f = lambda v: 0.5 * F(v) ** 2  # noqa: E731
    H = np.empty((n, n))
    eye = np.eye(n) * h
    for i in range(n):
        for j in range(i, n):
            val = (f(y + eye[i] + eye[j]) - f(y + eye[i] - eye[j])
                   - f(y - eye[i] + eye[j]) + f(y - eye[i] - eye[j])) / (4 * h * h)
            H[i, j] = H[j, i] = val
    return H


@dataclass
class MinkowskiReport:
    """Outcome of the three Minkowski-norm checks.

    ``min_value`` is the smallest sampled F, ``homogeneity_margin`` the
    largest ``|F(lv) - l F(v)|`` and ``homogeneity_ratio`` that error divided
    by its allowance ``tol * (1 + l F(v))``; ``min_eigenvalue`` is the
    smallest eigenvalue of the fundamental form over all samples.
    """

    nonnegative: bool
    homogeneous: bool
    positive_definite: bool
    min_value: float
    homogeneity_margin: float
    homogeneity_ratio: float
    min_eigenvalue: float
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.nonnegative and self.homogeneous and self.positive_definite

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "nonnegative": self.nonnegative,
            "homogeneous": self.homogeneous,
            "positive_definite": self.positive_definite,
            "min_value": self.min_value,
            "homogeneity_margin": self.homogeneity_margin,
            "homogeneity_ratio": self.homogeneity_ratio,
            "min_eigenvalue": self.min_eigenvalue,
            "failures": list(self.failures),
        }


def minkowski_check(F: MinkowskiNorm, samples: Sequence, scales: Sequence[float] = (0.5, 2.0, 10.0),
                    tol: float = HOMOGENEITY_TOL, h: float = HESSIAN_STEP) -> MinkowskiReport:
    """Check non-negativity, 1-homogeneity and positive-definiteness.

    The fundamental form at ``y`` is the Hessian of ``F^2 / 2`` there, taken
    by central differences with step ``h``.
    """
    samples = [np.asarray(v, dtype=float) for v in samples]
    if not samples:
        raise NormError("no sample vectors")
    if any(not np.any(v) for v in samples):
        raise NormError("sample vectors must be nonzero")
    if any(lam <= 0 for lam in scales):
        raise NormError("scales must be positive")
    failures = []
    values = [F(v) for v in samples]
    min_value = min(values)
    nonneg = min_value >= 0
    if not nonneg:
        failures.append(f"negative value {min_value:.3g}")

    margin = ratio = 0.0
    for v, fv in zip(samples, values):
        for lam in scales:
            err = abs(F(lam * v) - lam * fv)
            margin = max(margin, err)
            ratio = max(ratio, err / (tol * (1 + abs(lam * fv))))
    homog = ratio <= 1.0
    if not homog:
        failures.append(f"homogeneity error {margin:.3g}")

    min_eig = min(float(np.linalg.eigvalsh(hessian_half_square(F, v, h))[0]) for v in samples)
    posdef = min_eig > 0
    if not posdef:
        failures.append(f"fundamental form eigenvalue {min_eig:.3g}")
    return MinkowskiReport(nonneg, homog, posdef, min_value, margin, ratio, min_eig, failures)


def _weight_values(weights, x) -> np.ndarray:
    return np.array([float(w(x)) if callable(w) else float(w) for w in weights])


def build_partition_norm(chart: ChartSpec, norms: Sequence[MinkowskiNorm], weights: Sequence,
                         point=None, check_points: Sequence | None = None,
                         tol: float = WEIGHT_TOL) -> MinkowskiNorm:
    """Glue per-manifold norms into ``F(v) = sum_i h_i(point) F_i(v|block_i)``.

    Parameters
    ----------
    chart : ChartSpec
        Chart whose flat space carries the result.
    norms : sequence of MinkowskiNorm
        One norm per meeting manifold, on that manifold's ``n_i`` coordinates.
    weights : sequence
        Constants or callables of a flat-space point; they must be
        non-negative and sum to 1 on ``point`` and every ``check_points`` entry.
    point : array_like, optional
        Base point at which weights are evaluated; the origin by default.
    """
    if len(norms) != chart.s or len(weights) != chart.s:
        raise NormError(f"need {chart.s} norms and weights")
    for i, nm in enumerate(norms):
        if nm.dim != chart.dims[i]:
            raise NormError(f"norm {i} has dim {nm.dim}, manifold has {chart.dims[i]}")
    base = np.zeros(chart.D) if point is None else np.asarray(point, dtype=float)
    for x in [base] + [np.asarray(p, dtype=float) for p in (check_points or [])]:
        h = _weight_values(weights, x)
        if np.any(h < -tol) or np.any(h > 1 + tol):
            raise NormError("weights must lie in [0, 1]")
        if abs(h.sum() - 1.0) > tol:
            raise NormError("weights do not sum to 1")
    h = _weight_values(weights, base)
    blocks = [manifold_block(chart, i) for i in range(chart.s)]

    def F(v):
        return sum(hi * nm(v[b]) for hi, nm, b in zip(h, norms, blocks))

    return MinkowskiNorm(chart.D, F)
