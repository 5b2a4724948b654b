"""Discrete Aviles-Giga energy and an explicit descent with backtracking."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from ..field_lab.calculus import partials
from ..field_lab.grid import PlanarField


def _stencils(u: np.ndarray, h: float):
    ux = (u[2:, 1:-1] - u[:-2, 1:-1]) / (2 * h)
    uy = (u[1:-1, 2:] - u[1:-1, :-2]) / (2 * h)
    uxx = (u[2:, 1:-1] - 2 * u[1:-1, 1:-1] + u[:-2, 1:-1]) / h**2
    uyy = (u[1:-1, 2:] - 2 * u[1:-1, 1:-1] + u[1:-1, :-2]) / h**2
    uxy = (u[2:, 2:] - u[2:, :-2] - u[:-2, 2:] + u[:-2, :-2]) / (4 * h**2)
    return ux, uy, uxx, uyy, uxy


def _check(u: PlanarField, epsilon: float) -> None:
    if u.role != "scalar":
        raise ValueError("energy expects a scalar potential")
    if not epsilon > 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")


def aviles_giga_energy(u: PlanarField, epsilon: float) -> float:
    """sum over non-boundary nodes of (eps |D^2 u|^2 + (1 - |Du|^2)^2 / eps) h^2.

    The outer node ring is the ghost layer feeding the stencils.
    """
    _check(u, epsilon)
    return _energy(u.values, u.spec.h, epsilon)


def _energy(u: np.ndarray, h: float, eps: float) -> float:
    ux, uy, uxx, uyy, uxy = _stencils(u, h)
    hess = uxx**2 + uyy**2 + 2 * uxy**2
    well = (1 - ux**2 - uy**2) ** 2
    return float(np.sum(eps * hess + well / eps) * h * h)


def _energy_gradient(u: np.ndarray, h: float, eps: float) -> np.ndarray:
    """dE/du_ij, assembled as the adjoint of each stencil."""
    ux, uy, uxx, uyy, uxy = _stencils(u, h)
    w = 1 - ux**2 - uy**2
    # chain rule: d(energy)/d(stencil value) times the stencil weight
    g_xx = 2 * eps * uxx
    g_yy = 2 * eps * uyy
    g_xy = eps * uxy
    g_x = -2 * w * ux * h / eps
    g_y = -2 * w * uy * h / eps
    G = np.zeros_like(u)
    c = (slice(1, -1), slice(1, -1))
    G[2:, 1:-1] += g_xx + g_x
    G[c] -= 2 * g_xx
    G[:-2, 1:-1] += g_xx - g_x
    G[1:-1, 2:] += g_yy + g_y
    G[c] -= 2 * g_yy
    G[1:-1, :-2] += g_yy - g_y
    G[2:, 2:] += g_xy
    G[2:, :-2] -= g_xy
    G[:-2, 2:] -= g_xy
    G[:-2, :-2] += g_xy
    return G


def aviles_giga_gradient(u: PlanarField, epsilon: float) -> PlanarField:
    """Gradient of the discrete energy with respect to the nodal values."""
    _check(u, epsilon)
    return u.with_values(_energy_gradient(u.values, u.spec.h, epsilon))


@dataclass(frozen=True)
class DescentResult:
    field: PlanarField
    trace: tuple[tuple[int, float, float], ...]

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e, _ in self.trace])

    def trace_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "energy", "step_size"])
        for s, e, t in self.trace:
            w.writerow([s, repr(float(e)), repr(float(t))])
        return buf.getvalue()


def minimize_aviles_giga(
    u0: PlanarField,
    epsilon: float,
    steps: int,
    step_size: float,
    boundary: str = "fixed",
    max_halvings: int = 40,
    gtol: float = 1e-10,
) -> DescentResult:
    """Explicit L2 gradient descent; a step that raises the energy is retried at half size.

    ``boundary="fixed"`` freezes the outer node ring (Dirichlet trace);
    ``"free"`` lets every node move. Trace rows are (step, energy, step size used),
    row 0 being the initial energy.
    """
    _check(u0, epsilon)
    if not step_size > 0:
        raise ValueError("step_size must be positive")
    if boundary not in ("fixed", "free"):
        raise ValueError("boundary must be 'fixed' or 'free'")
    h = u0.spec.h
    u = np.array(u0.values, dtype=float)
    energy = _energy(u, h, epsilon)
    trace = [(0, energy, 0.0)]
    tau = float(step_size)
    for step in range(1, steps + 1):
        G = _energy_gradient(u, h, epsilon) / (h * h)
        if boundary == "fixed":
            G[0, :] = G[-1, :] = G[:, 0] = G[:, -1] = 0.0
        if np.max(np.abs(G)) <= gtol:
            break
        for _ in range(max_halvings + 1):
            trial = u - tau * G
            e_trial = _energy(trial, h, epsilon)
            if not np.isfinite(e_trial):
                raise FloatingPointError(f"non-finite energy at step {step}")
            if e_trial <= energy:
                break
            tau /= 2
        else:
            break  # no decreasing step found
        u, energy = trial, e_trial
        trace.append((step, energy, tau))
    return DescentResult(u0.with_values(u), tuple(trace))


def field_from_u(u: PlanarField) -> PlanarField:
    """m = (-d2 u, d1 u) on the grid cropped by one node."""
    if u.role != "scalar":
        raise ValueError("field_from_u expects a scalar potential")
    d1, d2 = partials(u.values, u.spec.h)
    return PlanarField(u.spec.crop(1), np.stack([-d2, d1], axis=-1), "vector", u.singular[1:-1, 1:-1])


def eikonal_residual(u: PlanarField) -> float:
    """Mean over non-boundary nodes of ||grad u| - 1|."""
    d1, d2 = partials(u.values, u.spec.h)
    return float(np.mean(np.abs(np.hypot(d1, d2) - 1)))
