"""m <-> F through the Jin-Kohn rows, distance to K, and the Beltrami residuals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..entropy_core.kset import jin_kohn_sigma, p_matrix, p_matrix_derivative, perp, reduce_angle
from ..field_lab.calculus import partials
from ..field_lab.grid import PlanarField

DEFAULT_CURL_TOL = 1e-2


def potential_gradients(m: PlanarField) -> np.ndarray:
    """Rows i Sigma_j(m), shape (nx, ny, 2, 2): [..., j-1, :] = grad F_j."""
    return np.stack([perp(jin_kohn_sigma(1, m.values)), perp(jin_kohn_sigma(2, m.values))], axis=-2)


def plaquette_curl(g: np.ndarray, h: float) -> np.ndarray:
    """Trapezoid circulation of g (shape (nx, ny, 2)) around each cell, divided by h^2."""
    g1, g2 = g[..., 0], g[..., 1]
    bottom = 0.5 * (g1[:-1, :-1] + g1[1:, :-1])
    top = 0.5 * (g1[:-1, 1:] + g1[1:, 1:])
    left = 0.5 * (g2[:-1, :-1] + g2[:-1, 1:])
    right = 0.5 * (g2[1:, :-1] + g2[1:, 1:])
    return (bottom + right - top - left) / h


def _integrate(g: np.ndarray, h: float) -> np.ndarray:
    """Trapezoid path integral of g: along the bottom row, then up every column."""
    F = np.zeros(g.shape[:2])
    F[1:, 0] = np.cumsum(0.5 * h * (g[:-1, 0, 0] + g[1:, 0, 0]))
    F[:, 1:] = F[:, :1] + np.cumsum(0.5 * h * (g[:, :-1, 1] + g[:, 1:, 1]), axis=1)
    return F


@dataclass(frozen=True)
class Potentials:
    F1: PlanarField
    F2: PlanarField
    curl_residual: float

    def __iter__(self):
        yield self.F1
        yield self.F2


def field_to_potential(m: PlanarField, curl_tol: float = DEFAULT_CURL_TOL, unit_tol: float = 1e-8) -> Potentials:
    """F_j with grad F_j = i Sigma_j(m), F_j = 0 at the first node.

    Raises if m is not unit valued or if the worst plaquette curl of
    i Sigma_j(m) exceeds ``curl_tol``.
    """
    if m.role != "vector":
        raise ValueError("field_to_potential expects a vector field")
    if m.unit_defect() > unit_tol:
        raise ValueError(f"field is not unit valued (defect {m.unit_defect():.3g})")
    rows = potential_gradients(m)
    h = m.spec.h
    residual = max(float(np.max(np.abs(plaquette_curl(rows[..., j, :], h)))) for j in range(2))
    if residual > curl_tol:
        raise ValueError(f"curl residual {residual:.3g} exceeds {curl_tol:.3g}: field not admissible")
    F1 = PlanarField(m.spec, _integrate(rows[..., 0, :], h), "scalar", m.singular)
    F2 = PlanarField(m.spec, _integrate(rows[..., 1, :], h), "scalar", m.singular)
    return Potentials(F1, F2, residual)


def potential_jacobian(F) -> np.ndarray:
    """DF on the cropped grid: [..., j, a] = d_a F_j."""
    F1, F2 = F
    rows = [np.stack(partials(Fj.values, Fj.spec.h), axis=-1) for Fj in (F1, F2)]
    return np.stack(rows, axis=-2)


def potential_to_field(F) -> PlanarField:
    """m1 = -F1,1 - F2,2 and m2 = F1,2 - F2,1 on the grid cropped by one node."""
    F1, F2 = F
    D = potential_jacobian((F1, F2))
    m1 = -D[..., 0, 0] - D[..., 1, 1]
    m2 = D[..., 0, 1] - D[..., 1, 0]
    return PlanarField(F1.spec.crop(1), np.stack([m1, m2], axis=-1), "vector", F1.singular[1:-1, 1:-1])


_SCAN = 1024


def _refine(A: np.ndarray, theta: np.ndarray, steps: int) -> np.ndarray:
    for _ in range(steps):
        R = A - p_matrix(theta)
        d1 = p_matrix_derivative(theta, 1)
        d2 = p_matrix_derivative(theta, 2)
        f1 = -2 * np.sum(R * d1, axis=(-2, -1))
        f2 = 2 * np.sum(d1 * d1, axis=(-2, -1)) - 2 * np.sum(R * d2, axis=(-2, -1))
        step = np.where(f2 > 0, -f1 / np.where(f2 > 0, f2, 1.0), 0.0)
        step = np.clip(step, -np.pi / _SCAN, np.pi / _SCAN)
        cand = theta + step
        better = np.sum((A - p_matrix(cand)) ** 2, axis=(-2, -1)) <= np.sum(R**2, axis=(-2, -1))
        theta = np.where(better, cand, theta)
    return theta


def inclusion_distance_many(A, chunk: int = 4096, newton_steps: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized ``inclusion_distance`` over matrices of shape (..., 2, 2)."""
    A = np.asarray(A, dtype=float)
    flat = A.reshape(-1, 2, 2)
    grid = 2 * np.pi * np.arange(_SCAN) / _SCAN
    P = p_matrix(grid)
    dist = np.empty(len(flat))
    arg = np.empty(len(flat))
    for s in range(0, len(flat), chunk):
        a = flat[s : s + chunk]
        d2 = np.sum((a[:, None] - P[None]) ** 2, axis=(-2, -1))
        theta = _refine(a, grid[np.argmin(d2, axis=1)], newton_steps)
        dist[s : s + chunk] = np.sqrt(np.sum((a - p_matrix(theta)) ** 2, axis=(-2, -1)))
        arg[s : s + chunk] = reduce_angle(theta)
    return dist.reshape(A.shape[:-2]), arg.reshape(A.shape[:-2])


def inclusion_distance(A) -> tuple[float, float]:
    """(min_theta |A - P(theta)|, argmin) by a 1024-angle scan and three Newton steps."""
    d, t = inclusion_distance_many(np.asarray(A, dtype=float).reshape(1, 2, 2))
    return float(d[0]), float(t[0])


def wirtinger(v: PlanarField) -> tuple[np.ndarray, np.ndarray]:
    """(dv/dz, dv/dzbar) = (1/2)(d1 -+ i d2) v on the cropped grid."""
    vals = v.as_complex()
    d1, d2 = partials(vals, v.spec.h)
    return 0.5 * (d1 - 1j * d2), 0.5 * (d1 + 1j * d2)


def complex_potential(F) -> PlanarField:
    """v = F1 + i F2."""
    F1, F2 = F
    return PlanarField(F1.spec, F1.values + 1j * F2.values, "complex", F1.singular)


def beltrami_residual(v: PlanarField) -> tuple[np.ndarray, np.ndarray]:
    """r1 = |dv/dzbar - (4/3)(dv/dz)^3| and r2 = ||dv/dz| - 1/2|."""
    dz, dzb = wirtinger(v)
    return np.abs(dzb - (4 / 3) * dz**3), np.abs(np.abs(dz) - 0.5)
