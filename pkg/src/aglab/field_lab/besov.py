"""A discrete B^{1/3}_{4,inf} seminorm and the matching L^{4/3} norm of the cubic average."""

from __future__ import annotations

import numpy as np

from .grid import Box, PlanarField


def _lp(values: np.ndarray, p: float, h: float) -> float:
    return float((np.sum(values**p) * h * h) ** (1.0 / p))


def direction_shifts(t_nodes: int, n_directions: int = 16) -> list[tuple[int, int]]:
    """Lattice shifts of length about t_nodes along equispaced directions.

    Rounded shifts that overshoot |shift| <= t_nodes are pulled back toward zero.
    """
    out = []
    for a in 2 * np.pi * np.arange(n_directions) / n_directions:
        di, dj = int(round(t_nodes * np.cos(a))), int(round(t_nodes * np.sin(a)))
        while di * di + dj * dj > t_nodes * t_nodes:
            if abs(di) >= abs(dj):
                di -= int(np.sign(di))
            else:
                dj -= int(np.sign(dj))
        if (di, dj) != (0, 0) and (di, dj) not in out:
            out.append((di, dj))
    return out


def besov_profile(
    m: PlanarField, U: Box, s: float = 1 / 3, p: float = 4.0, n_directions: int = 16
) -> list[tuple[float, float]]:
    """(t, t^{-s} max_{|shift|<=t} ||D^shift m||_{L^p(U)}) per dyadic scale t = 2^j h."""
    if m.role != "vector":
        raise ValueError("besov seminorm expects a vector field")
    h = m.spec.h
    si, sj = U.node_slices(m.spec)
    gap = min(si.start, sj.start, m.spec.nx - si.stop, m.spec.ny - sj.stop)
    if gap < 1:
        raise ValueError("U leaves no room for a shift inside the grid")
    base = m.values[si, sj]
    rows = []
    running = 0.0
    t_nodes = 1
    while t_nodes <= gap:
        for di, dj in direction_shifts(t_nodes, n_directions):
            shifted = m.values[si.start + di : si.stop + di, sj.start + dj : sj.stop + dj]
            d = shifted - base
            running = max(running, _lp(np.hypot(d[..., 0], d[..., 1]), p, h))
        t = t_nodes * h
        rows.append((t, t ** (-s) * running))
        t_nodes *= 2
    return rows


def besov_seminorm(m: PlanarField, U: Box, s: float = 1 / 3, p: float = 4.0, n_directions: int = 16) -> float:
    """Max over dyadic t of t^{-s} sup_{|shift|<=t} ||m(.+shift) - m||_{L^p(U)}.

    Only n_directions directions are sampled per scale, so this is a lower bound
    for the continuum seminorm.
    """
    return max(v for _, v in besov_profile(m, U, s, p, n_directions))


def lp_norm_on(field: PlanarField, U: Box, p: float) -> float:
    """Discrete L^p(U) norm of a scalar field."""
    si, sj = U.node_slices(field.spec)
    return _lp(np.abs(field.values[si, sj]), p, field.spec.h)
