"""Discrete mollification, the nonlinear commutator and the cubic difference average."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import PlanarField


def bump_profile(s: np.ndarray) -> np.ndarray:
    """exp(-1/(1-s^2)) on |s| < 1, zero elsewhere."""
    s = np.asarray(s, dtype=float)
    inside = np.abs(s) < 1
    safe = np.where(inside, 1 - s**2, 1.0)
    return np.where(inside, np.exp(-1.0 / safe), 0.0)


def ball_offsets(radius: float, h: float) -> np.ndarray:
    """Integer offsets (di, dj) with |(di, dj)| h < radius, shape (n, 2)."""
    r = int(np.ceil(radius / h))
    d = np.arange(-r, r + 1)
    di, dj = np.meshgrid(d, d, indexing="ij")
    keep = np.hypot(di, dj) * h < radius
    return np.stack([di[keep], dj[keep]], axis=-1)


@dataclass(frozen=True, eq=False)
class MollifierKernel:
    """Radial weights on the lattice offsets strictly inside the epsilon-ball, summing to one."""

    epsilon: float
    h: float
    offsets: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(
        cls, epsilon: float, h: float, profile: Callable[[np.ndarray], np.ndarray] = bump_profile
    ) -> "MollifierKernel":
        if epsilon < 2 * h * (1 - 1e-12):
            raise ValueError(f"epsilon = {epsilon} under-resolved: needs at least 2h = {2 * h}")
        offsets = ball_offsets(epsilon, h)
        w = profile(np.hypot(offsets[:, 0], offsets[:, 1]) * h / epsilon)
        keep = w > 0
        offsets, w = offsets[keep], w[keep]
        w = w / w.sum()
        offsets.setflags(write=False)
        w.setflags(write=False)
        return cls(float(epsilon), float(h), offsets, w)

    @property
    def reach(self) -> int:
        """Largest |offset| component, i.e. the crop applied by mollify."""
        return int(np.max(np.abs(self.offsets)))


def _shifted(values: np.ndarray, di: int, dj: int, r: int) -> np.ndarray:
    nx, ny = values.shape[:2]
    return values[r + di : nx - r + di, r + dj : ny - r + dj]


def convolve(values: np.ndarray, offsets: np.ndarray, weights: np.ndarray, r: int) -> np.ndarray:
    """sum_o w_o values[x + o] on nodes at least r away from the edge."""
    nx, ny = values.shape[:2]
    if nx <= 2 * r or ny <= 2 * r:
        raise ValueError("grid too small for the kernel reach")
    out = np.zeros((nx - 2 * r, ny - 2 * r) + values.shape[2:], dtype=values.dtype)
    for (di, dj), w in zip(offsets, weights):
        out += w * _shifted(values, di, dj, r)
    return out


def mollify(m: PlanarField, kernel: MollifierKernel) -> PlanarField:
    if not np.isclose(kernel.h, m.spec.h, rtol=1e-12):
        raise ValueError("kernel built for a different grid spacing")
    r = kernel.reach
    out = convolve(m.values, kernel.offsets, kernel.weights, r)
    return PlanarField(m.spec.crop(r), out, m.role, m.singular[r:-r, r:-r])


def _check_node(m: PlanarField, node: tuple[int, int], r: int) -> None:
    i, j = node
    if not (r <= i < m.spec.nx - r and r <= j < m.spec.ny - r):
        raise ValueError(f"node {node} closer than {r} nodes to the boundary")


def commutator(Pi: Callable[[np.ndarray], np.ndarray], m: PlanarField, kernel: MollifierKernel, node) -> np.ndarray:
    """[Pi(m)]_eps(x) - Pi(m_eps(x)) at a single node x."""
    r = kernel.reach
    _check_node(m, node, r)
    i, j = node
    samples = m.values[i + kernel.offsets[:, 0], j + kernel.offsets[:, 1]]
    avg_pi = np.tensordot(kernel.weights, np.asarray(Pi(samples)), axes=(0, 0))
    return avg_pi - np.asarray(Pi(kernel.weights @ samples))


def difference_average(m: PlanarField, epsilon: float, node, power: float = 2.0) -> float:
    """Uniform average of |m(x+z) - m(x)|^power over lattice z with |z| < epsilon."""
    offsets = ball_offsets(epsilon, m.spec.h)
    r = int(np.max(np.abs(offsets)))
    _check_node(m, node, r)
    i, j = node
    diff = m.values[i + offsets[:, 0], j + offsets[:, 1]] - m.values[i, j]
    mag = np.abs(diff) if m.role != "vector" else np.hypot(diff[:, 0], diff[:, 1])
    return float(np.mean(mag**power))


def p_eps(m: PlanarField, epsilon: float) -> PlanarField:
    """eps^{-1} times the uniform ball average of |D^z m|^3, on the grid cropped by the ball reach."""
    h = m.spec.h
    if epsilon < 2 * h * (1 - 1e-12):
        raise ValueError(f"epsilon = {epsilon} under-resolved: needs at least 2h = {2 * h}")
    if m.role != "vector":
        raise ValueError("p_eps expects a vector field")
    offsets = ball_offsets(epsilon, h)
    r = int(np.max(np.abs(offsets)))
    nx, ny = m.spec.shape
    if nx <= 2 * r or ny <= 2 * r:
        raise ValueError("grid too small for epsilon")
    base = m.values[r : nx - r, r : ny - r]
    acc = np.zeros(base.shape[:2])
    for di, dj in offsets:
        d = _shifted(m.values, di, dj, r) - base
        acc += np.hypot(d[..., 0], d[..., 1]) ** 3
    out = acc / (len(offsets) * epsilon)
    return PlanarField(m.spec.crop(r), out, "scalar", m.singular[r:-r, r:-r])
