"""Uniform grids and fields sampled on them.

Arrays use ``ij`` indexing: ``values[i, j]`` sits at ``origin + (i h, j h)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ROLES = ("vector", "scalar", "complex")
MIN_NODES = 8


@dataclass(frozen=True)
class GridSpec:
    origin: tuple[float, float]
    h: float
    nx: int
    ny: int
    boundary_margin: int = 0

    def __post_init__(self):
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))
        if not (self.h > 0 and np.isfinite(self.h)):
            raise ValueError(f"grid spacing must be positive, got {self.h}")
        if self.nx < MIN_NODES or self.ny < MIN_NODES:
            raise ValueError(f"grid needs at least {MIN_NODES} nodes per axis, got {self.nx}x{self.ny}")
        if self.boundary_margin < 0 or min(self.nx, self.ny) - 2 * self.boundary_margin < 1:
            raise ValueError("boundary margin leaves an empty interior")

    @classmethod
    def centered(cls, nx: int, ny: int, h: float, boundary_margin: int = 0) -> "GridSpec":
        """Grid whose node box is centred at the origin."""
        return cls((-(nx - 1) * h / 2, -(ny - 1) * h / 2), h, nx, ny, boundary_margin)

    @classmethod
    def square(cls, n: int, lo: float = -1.0, hi: float = 1.0, boundary_margin: int = 0) -> "GridSpec":
        """n x n nodes spanning [lo, hi]^2 including both ends."""
        h = (hi - lo) / (n - 1)
        return cls((lo, lo), h, n, n, boundary_margin)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nx, self.ny)

    @property
    def x(self) -> np.ndarray:
        return self.origin[0] + self.h * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return self.origin[1] + self.h * np.arange(self.ny)

    def coords(self) -> np.ndarray:
        """Node positions, shape (nx, ny, 2)."""
        X, Y = np.meshgrid(self.x, self.y, indexing="ij")
        return np.stack([X, Y], axis=-1)

    @property
    def extent(self) -> tuple[float, float, float, float]:
        return (self.x[0], self.x[-1], self.y[0], self.y[-1])

    def interior_extent(self) -> tuple[float, float, float, float]:
        """Node box after removing the boundary margin."""
        m = self.boundary_margin
        return (self.x[m], self.x[-1 - m], self.y[m], self.y[-1 - m])

    def crop(self, r: int) -> "GridSpec":
        """Remove r nodes on every side; the margin shrinks accordingly."""
        if r < 0:
            raise ValueError("crop must be non-negative")
        return GridSpec(
            (self.origin[0] + r * self.h, self.origin[1] + r * self.h),
            self.h,
            self.nx - 2 * r,
            self.ny - 2 * r,
            max(self.boundary_margin - r, 0),
        )

    def index_of(self, point) -> tuple[int, int]:
        """Nearest node to a physical point."""
        i = int(round((point[0] - self.origin[0]) / self.h))
        j = int(round((point[1] - self.origin[1]) / self.h))
        return i, j

    def cell_of(self, point) -> tuple[int, int]:
        """Lower-left node of the cell containing a point."""
        i = int(np.floor((point[0] - self.origin[0]) / self.h))
        j = int(np.floor((point[1] - self.origin[1]) / self.h))
        return i, j


@dataclass(frozen=True, eq=False)
class PlanarField:
    """Samples of a vector, scalar or complex field on a grid.

    ``singular`` marks nodes excluded from unit-norm and production statistics.
    """

    spec: GridSpec
    values: np.ndarray
    role: str = "vector"
    singular: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")
        dtype = complex if self.role == "complex" else float
        v = np.array(self.values, dtype=dtype)
        want = self.spec.shape + ((2,) if self.role == "vector" else ())
        if v.shape != want:
            raise ValueError(f"{self.role} field on {self.spec.shape} grid needs shape {want}, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("field has non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.singular is None:
            mask = np.zeros(self.spec.shape, dtype=bool)
        else:
            mask = np.array(self.singular, dtype=bool)
            if mask.shape != self.spec.shape:
                raise ValueError("singular mask must match grid shape")
        mask.setflags(write=False)
        object.__setattr__(self, "singular", mask)

    def crop(self, r: int) -> "PlanarField":
        if r == 0:
            return self
        sl = (slice(r, -r), slice(r, -r))
        return PlanarField(self.spec.crop(r), self.values[sl], self.role, self.singular[sl])

    def norm(self) -> np.ndarray:
        if self.role == "vector":
            return np.hypot(self.values[..., 0], self.values[..., 1])
        return np.abs(self.values)

    def unit_defect(self) -> float:
        """max ||m| - 1| over nodes not flagged singular."""
        ok = ~self.singular
        if not np.any(ok):
            return 0.0
        return float(np.max(np.abs(self.norm()[ok] - 1.0)))

    def is_unit(self, tol: float = 1e-12) -> bool:
        return self.unit_defect() <= tol

    def as_complex(self) -> np.ndarray:
        if self.role == "vector":
            return self.values[..., 0] + 1j * self.values[..., 1]
        return self.values.astype(complex)

    def with_values(self, values, role: str | None = None) -> "PlanarField":
        return PlanarField(self.spec, values, role or self.role, self.singular)


def field_from_function(spec: GridSpec, f, role: str = "vector", singular=None) -> PlanarField:
    """Sample a closed-form f(x1, x2) on the grid nodes."""
    X, Y = np.meshgrid(spec.x, spec.y, indexing="ij")
    out = f(X, Y)
    if role == "vector":
        out = np.stack(np.broadcast_arrays(*out), axis=-1) if isinstance(out, tuple) else out
    return PlanarField(spec, np.broadcast_to(out, spec.shape + ((2,) if role == "vector" else ())), role, singular)


@dataclass(frozen=True)
class Box:
    """Axis-aligned physical rectangle [x0, x1] x [y0, y1]."""

    x0: float
    x1: float
    y0: float
    y1: float

    def node_slices(self, spec: GridSpec) -> tuple[slice, slice]:
        """Index slices of the nodes lying inside the box (with a tiny tolerance)."""
        tol = 1e-9 * spec.h
        xs = np.nonzero((spec.x >= self.x0 - tol) & (spec.x <= self.x1 + tol))[0]
        ys = np.nonzero((spec.y >= self.y0 - tol) & (spec.y <= self.y1 + tol))[0]
        if xs.size == 0 or ys.size == 0:
            raise ValueError(f"box {self} contains no grid nodes")
        return slice(xs[0], xs[-1] + 1), slice(ys[0], ys[-1] + 1)
