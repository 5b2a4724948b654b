"""Centered finite differences; every output is cropped by one node."""

from __future__ import annotations

import numpy as np

from .grid import PlanarField


def _d1(a: np.ndarray, h: float) -> np.ndarray:
    return (a[2:, 1:-1] - a[:-2, 1:-1]) / (2 * h)


def _d2(a: np.ndarray, h: float) -> np.ndarray:
    return (a[1:-1, 2:] - a[1:-1, :-2]) / (2 * h)


def partials(values: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """(d1 f, d2 f) on the nodes one step in from the edge."""
    return _d1(values, h), _d2(values, h)


def gradient(u: PlanarField) -> PlanarField:
    """grad u of a scalar field; complex fields go through partials()."""
    if u.role != "scalar":
        raise ValueError(f"gradient expects a scalar field, got {u.role}")
    g1, g2 = partials(u.values, u.spec.h)
    return PlanarField(u.spec.crop(1), np.stack([g1, g2], axis=-1), "vector", u.singular[1:-1, 1:-1])


def jacobian(m: PlanarField) -> np.ndarray:
    """J[..., b, a] = d_a m_b on the cropped grid."""
    if m.role != "vector":
        raise ValueError("jacobian expects a vector field")
    h = m.spec.h
    v = m.values
    rows = [np.stack([_d1(v[..., b], h), _d2(v[..., b], h)], axis=-1) for b in range(2)]
    return np.stack(rows, axis=-2)


def divergence(m: PlanarField) -> PlanarField:
    if m.role != "vector":
        raise ValueError("divergence expects a vector field")
    h = m.spec.h
    div = _d1(m.values[..., 0], h) + _d2(m.values[..., 1], h)
    return PlanarField(m.spec.crop(1), div, "scalar", m.singular[1:-1, 1:-1])


def curl(m: PlanarField) -> PlanarField:
    """d1 m2 - d2 m1."""
    if m.role != "vector":
        raise ValueError("curl expects a vector field")
    h = m.spec.h
    c = _d1(m.values[..., 1], h) - _d2(m.values[..., 0], h)
    return PlanarField(m.spec.crop(1), c, "scalar", m.singular[1:-1, 1:-1])


def grown_mask(mask: np.ndarray, r: int) -> np.ndarray:
    """Dilate a boolean node mask by r nodes in the max-norm."""
    out = mask.copy()
    for _ in range(r):
        g = out.copy()
        g[1:] |= out[:-1]
        g[:-1] |= out[1:]
        g[:, 1:] |= g[:, :-1].copy()
        g[:, :-1] |= g[:, 1:].copy()
        out = g
    return out
