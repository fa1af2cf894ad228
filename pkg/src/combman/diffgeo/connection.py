"""Connections, torsion and the Levi-Civita connection of a chart metric.

Connection coefficients are arrays ``gamma[c, a, b]`` meaning
``D_{d/dx^b} d/dx^a = gamma[c, a, b] d/dx^c``: ``c`` is the upper index, ``a``
the differentiated field and ``b`` the direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .poly import Polynomial

__all__ = [
    "ConnectionCoefficients",
    "TensorField",
    "MetricField",
    "MetricError",
    "DEFAULT_METRIC_STEP",
    "PIVOT_TOL",
    "central_jacobian",
    "covariant_differential",
    "covariant_derivative",
    "torsion",
    "christoffel_from_metric",
    "levi_civita",
    "metric_compatibility_residual",
]

DEFAULT_METRIC_STEP = 1e-5
PIVOT_TOL = 1e-12


class MetricError(ValueError):
    pass


def central_jacobian(f: Callable, point, h: float = DEFAULT_METRIC_STEP) -> np.ndarray:
    """Central differences of an array-valued map; derivative axis last."""
    point = np.asarray(point, dtype=float)
    base = np.asarray(f(point), dtype=float)
    out = np.empty(base.shape + (point.size,))
    for c in range(point.size):
        step = np.zeros_like(point)
        step[c] = h
        out[..., c] = (np.asarray(f(point + step)) - np.asarray(f(point - step))) / (2 * h)
    return out


def _poly_array_eval(polys: np.ndarray, point) -> np.ndarray:
    pt = [float(p) for p in point]
    return np.vectorize(lambda p: float(p(pt)), otypes=[float])(polys)


@dataclass(frozen=True)
class ConnectionCoefficients:
    dim: int
    gamma: Callable[[np.ndarray], np.ndarray]

    def __call__(self, point) -> np.ndarray:
        g = np.asarray(self.gamma(np.asarray(point, dtype=float)), dtype=float)
        if g.shape != (self.dim,) * 3:
            raise ValueError(f"connection array has shape {g.shape}, expected {(self.dim,) * 3}")
        if not np.all(np.isfinite(g)):
            raise ValueError("non-finite connection coefficients")
        return g

    @classmethod
    def constant(cls, array) -> "ConnectionCoefficients":
        array = np.asarray(array, dtype=float)
        return cls(array.shape[0], lambda p: array)

    @classmethod
    def zero(cls, dim: int) -> "ConnectionCoefficients":
        return cls.constant(np.zeros((dim,) * 3))


@dataclass(frozen=True)
class TensorField:
    """An (r, s) tensor field; component axes are the r upper then the s lower."""

    dim: int
    upper: int
    lower: int
    components: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None

    @classmethod
    def from_polynomials(cls, polys, upper: int, lower: int) -> "TensorField":
        if isinstance(polys, Polynomial):
            arr = np.empty((), dtype=object)
            arr[()] = polys
        else:
            arr = np.asarray(polys, dtype=object)
        dim = next(p.nvars for p in arr.ravel())
        grads = np.empty(arr.shape + (dim,), dtype=object)
        for idx in np.ndindex(arr.shape):
            for c in range(dim):
                grads[idx + (c,)] = arr[idx].diff(c)
        return cls(dim, upper, lower,
                   lambda p: _poly_array_eval(arr, p),
                   lambda p: _poly_array_eval(grads, p))

    def value(self, point) -> np.ndarray:
        out = np.asarray(self.components(np.asarray(point, dtype=float)), dtype=float)
        expected = (self.dim,) * (self.upper + self.lower)
        if out.shape != expected:
            raise ValueError(f"tensor components have shape {out.shape}, expected {expected}")
        return out

    def gradient(self, point, h: float = DEFAULT_METRIC_STEP) -> np.ndarray:
        if self.jacobian is not None:
            return np.asarray(self.jacobian(np.asarray(point, dtype=float)), dtype=float)
        return central_jacobian(self.value, point, h)


def covariant_differential(gamma: ConnectionCoefficients, tau: TensorField, point,
                           h: float = DEFAULT_METRIC_STEP) -> np.ndarray:
    """Components of ``D tau`` with the direction index appended last.

    Each upper index picks up ``+ tau^{..e..} gamma[a_k, e, c]`` and each lower
    index ``- tau_{..e..} gamma[e, l_k, c]``.
    """
    if gamma.dim != tau.dim:
        raise ValueError("connection and tensor live on different charts")
    G = gamma(point)
    T = tau.value(point)
    out = tau.gradient(point, h).copy()
    rank = tau.upper + tau.lower
    for axis in range(rank):
        moved = np.moveaxis(T, axis, -1)
        if axis < tau.upper:
            term = np.einsum("...e,kec->...kc", moved, G)
        else:
            term = -np.einsum("...e,elc->...lc", moved, G)
        out += np.moveaxis(term, -2, axis)
    return out


def covariant_derivative(gamma: ConnectionCoefficients, tau: TensorField, X, point,
                         h: float = DEFAULT_METRIC_STEP) -> np.ndarray:
    """``D_X tau`` at ``point``; ``X`` is a vector or a callable field."""
    x = np.asarray(X(np.asarray(point, dtype=float)) if callable(X) else X, dtype=float)
    if x.shape != (tau.dim,):
        raise ValueError("direction has wrong dimension")
    return np.tensordot(covariant_differential(gamma, tau, point, h), x, axes=([-1], [0]))


def torsion(gamma, point=None) -> np.ndarray:
    """``T[c, a, b] = gamma[c, a, b] - gamma[c, b, a]``."""
    G = gamma(point) if callable(gamma) else np.asarray(gamma, dtype=float)
    return G - np.swapaxes(G, 1, 2)


@dataclass(frozen=True)
class MetricField:
    """Symmetric matrix field ``g(point)``; ``dg(point)[c, a, b] = d g_ab / dx^c``."""

    dim: int
    g: Callable[[np.ndarray], np.ndarray]
    dg: Callable[[np.ndarray], np.ndarray] | None = None

    @classmethod
    def from_polynomials(cls, polys) -> "MetricField":
        arr = np.asarray(polys, dtype=object)
        dim = arr.shape[0]
        grads = np.empty((dim, dim, dim), dtype=object)
        for c in range(dim):
            for a in range(dim):
                for b in range(dim):
                    grads[c, a, b] = arr[a, b].diff(c)
        return cls(dim, lambda p: _poly_array_eval(arr, p), lambda p: _poly_array_eval(grads, p))

    def matrix(self, point) -> np.ndarray:
        m = np.asarray(self.g(np.asarray(point, dtype=float)), dtype=float)
        if m.shape != (self.dim, self.dim):
            raise MetricError(f"metric has shape {m.shape}")
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m - m.T)) > 1e-12 * scale:
            raise MetricError("metric not symmetric")
        return m

    def partials(self, point, h: float = DEFAULT_METRIC_STEP) -> np.ndarray:
        """``[c, a, b]`` array of first derivatives, analytic when available."""
        if self.dg is not None:
            return np.asarray(self.dg(np.asarray(point, dtype=float)), dtype=float)
        jac = central_jacobian(self.g, point, h)
        return np.moveaxis(jac, -1, 0)

    def without_partials(self) -> "MetricField":
        return MetricField(self.dim, self.g)

    def as_tensor(self) -> TensorField:
        dg = None
        if self.dg is not None:
            dg = lambda p: np.moveaxis(np.asarray(self.dg(p), dtype=float), 0, -1)  # noqa: E731
        return TensorField(self.dim, 0, 2, self.matrix, dg)


def _inverse(m: np.ndarray) -> np.ndarray:
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] <= PIVOT_TOL * max(sv[0], 1.0):
        raise MetricError("metric not invertible")
    return np.linalg.inv(m)


def christoffel_from_metric(metric: MetricField, point, h: float = DEFAULT_METRIC_STEP) -> np.ndarray:
    """Levi-Civita coefficients ``gamma[c, a, b]`` at ``point``.

    ``gamma[c,a,b] = 1/2 g^{ce} (d_a g_{be} + d_b g_{ae} - d_e g_{ab})``; the
    result is symmetrized in ``(a, b)`` so its torsion is exactly zero.
    """
    ginv = _inverse(metric.matrix(point))
    dg = metric.partials(point, h)
    # S[a, b, e] = d_a g_be + d_b g_ae - d_e g_ab
    S = dg + np.transpose(dg, (1, 0, 2)) - np.transpose(dg, (1, 2, 0))
    G = 0.5 * np.einsum("ce,abe->cab", ginv, S)
    return 0.5 * (G + np.swapaxes(G, 1, 2))


def levi_civita(metric: MetricField, h: float = DEFAULT_METRIC_STEP) -> ConnectionCoefficients:
    return ConnectionCoefficients(metric.dim, lambda p: christoffel_from_metric(metric, p, h))


def metric_compatibility_residual(metric: MetricField, gamma, point,
                                  h: float = DEFAULT_METRIC_STEP) -> float:
    """``max |d_c g_ab - g_eb gamma[e,a,c] - g_ae gamma[e,b,c]|``."""
    G = gamma(point) if callable(gamma) else np.asarray(gamma, dtype=float)
    g = metric.matrix(point)
    dg = metric.partials(point, h)
    lhs = np.transpose(dg, (1, 2, 0))  # [a, b, c]
    rhs = np.einsum("eb,eac->abc", g, G) + np.einsum("ae,ebc->abc", g, G)
    return float(np.max(np.abs(lhs - rhs)))
