"""Reference unit fields: vortices, superposed vortices and straight jumps."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..entropy_core.kset import jin_kohn_sigma, perp
from ..field_lab.grid import GridSpec, PlanarField


def _off_node(zeta, spec: GridSpec) -> tuple[float, float]:
    """Move zeta by half a cell diagonally if it sits on a grid node."""
    zx, zy = float(zeta[0]), float(zeta[1])
    fx = (zx - spec.origin[0]) / spec.h
    fy = (zy - spec.origin[1]) / spec.h
    if abs(fx - round(fx)) < 1e-9 and abs(fy - round(fy)) < 1e-9:
        return zx + spec.h / 2, zy + spec.h / 2
    return zx, zy


def _singular_block(spec: GridSpec, zeta) -> np.ndarray:
    mask = np.zeros(spec.shape, dtype=bool)
    i, j = spec.cell_of(zeta)
    for a in (i, i + 1):
        for b in (j, j + 1):
            if 0 <= a < spec.nx and 0 <= b < spec.ny:
                mask[a, b] = True
    return mask


def vortex_center(zeta, spec: GridSpec) -> tuple[float, float]:
    """The centre actually used by ``vortex`` for this grid."""
    return _off_node(zeta, spec)


def vortex(zeta, alpha: int, spec: GridSpec) -> PlanarField:
    """alpha i (x - zeta)/|x - zeta|; nodes of the cell holding zeta are flagged singular."""
    if alpha not in (1, -1):
        raise ValueError("alpha must be +1 or -1")
    return vortex_superposition([zeta], spec, alpha=alpha)


def vortex_superposition(
    centers: Sequence, spec: GridSpec, alpha: int = 1, orientations: Sequence[int] | None = None
) -> PlanarField:
    """alpha i prod_k phase_k, phase_k = (z - zeta_k)/|z - zeta_k|, conjugated where orientation is -1."""
    orientations = [1] * len(centers) if orientations is None else list(orientations)
    if len(orientations) != len(centers):
        raise ValueError("one orientation per centre")
    z = spec.coords()
    w = np.full(spec.shape, alpha * 1j, dtype=complex)
    mask = np.zeros(spec.shape, dtype=bool)
    for c, o in zip(centers, orientations):
        c = _off_node(c, spec)
        d = (z[..., 0] - c[0]) + 1j * (z[..., 1] - c[1])
        phase = d / np.abs(d)
        w = w * (phase if o > 0 else np.conj(phase))
        mask |= _singular_block(spec, c)
    w = w / np.abs(w)  # keep |m| = 1 to rounding after many products
    return PlanarField(spec, np.stack([w.real, w.imag], axis=-1), "vector", mask)


def conjugate(m: PlanarField) -> PlanarField:
    """Complex conjugate (m1, -m2); reverses windings."""
    v = np.array(m.values)
    v[..., 1] *= -1
    return m.with_values(v)


def _check_beta(beta: float) -> None:
    if not (0 < beta <= np.pi / 2):
        raise ValueError(f"half-angle must lie in (0, pi/2], got {beta}")


def _unit_normal(nu) -> np.ndarray:
    nu = np.asarray(nu, dtype=float)
    n = np.linalg.norm(nu)
    if n == 0:
        raise ValueError("normal must be nonzero")
    return nu / n


def jump_traces(beta: float, nu) -> tuple[np.ndarray, np.ndarray]:
    """m+ = cos(beta) nu + sin(beta) i nu and m- = cos(beta) nu - sin(beta) i nu."""
    _check_beta(beta)
    nu = _unit_normal(nu)
    t = perp(nu)
    return np.cos(beta) * nu + np.sin(beta) * t, np.cos(beta) * nu - np.sin(beta) * t


def jump_line_offset(nu, spec: GridSpec) -> float:
    """Signed offset c with the jump line {x . nu = c} through the grid centre, moved off nodes."""
    nu = _unit_normal(nu)
    x0, x1, y0, y1 = spec.extent
    c = np.array([(x0 + x1) / 2, (y0 + y1) / 2]) @ nu
    s = spec.coords() @ nu
    for shift in (0.0, spec.h / 2, spec.h / 4, spec.h / 8):
        if np.min(np.abs(s - (c + shift))) > 1e-9 * spec.h:
            return float(c + shift)
    raise ValueError("could not place the jump line off the nodes")


def jump_field(beta: float, nu, spec: GridSpec) -> PlanarField:
    """m+ on {x . nu > c}, m- on the other side, c from ``jump_line_offset``."""
    plus, minus = jump_traces(beta, nu)
    nu = _unit_normal(nu)
    side = spec.coords() @ nu > jump_line_offset(nu, spec)
    values = np.where(side[..., None], plus, minus)
    return PlanarField(spec, values, "vector")


def jump_cost(j: int, beta: float, nu) -> float:
    """(Sigma_j(m+) - Sigma_j(m-)) . nu per unit length of the jump line."""
    plus, minus = jump_traces(beta, nu)
    nu = _unit_normal(nu)
    return float((jin_kohn_sigma(j, plus) - jin_kohn_sigma(j, minus)) @ nu)
