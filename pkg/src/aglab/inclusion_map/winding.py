"""Winding numbers of circle-valued fields and the plaquette singular-set scan."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from ..field_lab.grid import PlanarField


def wrap_angle(d):
    """Reduce to (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(d, dtype=float), 2 * np.pi)


def _angles(m: PlanarField) -> np.ndarray:
    return np.arctan2(m.values[..., 1], m.values[..., 0])


def loop_nodes(i0: int, j0: int, i1: int, j1: int) -> list[tuple[int, int]]:
    """Counterclockwise node loop around the rectangle [i0, i1] x [j0, j1], closed."""
    if not (i1 > i0 and j1 > j0):
        raise ValueError("loop rectangle must have i1 > i0 and j1 > j0")
    path = [(i, j0) for i in range(i0, i1)]
    path += [(i1, j) for j in range(j0, j1)]
    path += [(i, j1) for i in range(i1, i0, -1)]
    path += [(i0, j) for j in range(j1, j0, -1)]
    return path + [path[0]]


def winding_number(m: PlanarField, loop: tuple[int, int, int, int]) -> int:
    """Degree of m along the boundary of the node rectangle (i0, j0, i1, j1)."""
    path = loop_nodes(*loop)
    idx = tuple(np.array(path).T)
    if np.min(m.norm()[idx]) < 0.5:
        raise ValueError("|m| < 1/2 on the loop")
    inc = wrap_angle(np.diff(_angles(m)[idx]))
    if np.max(np.abs(inc)) >= np.pi / 2:
        raise ValueError("angle increment >= pi/2 between neighbouring loop nodes; refine the grid")
    return int(round(np.sum(inc) / (2 * np.pi)))


def plaquette_windings(m: PlanarField) -> np.ndarray:
    """Winding of every elementary 4-node loop, shape (nx-1, ny-1)."""
    if np.min(m.norm()) < 0.5:
        raise ValueError("|m| < 1/2 somewhere; angles undefined")
    a = _angles(m)
    c00, c10, c11, c01 = a[:-1, :-1], a[1:, :-1], a[1:, 1:], a[:-1, 1:]
    total = wrap_angle(c10 - c00) + wrap_angle(c11 - c10) + wrap_angle(c01 - c11) + wrap_angle(c00 - c01)
    return np.rint(total / (2 * np.pi)).astype(int)


@dataclass(frozen=True)
class SingularPoint:
    x: float
    y: float
    winding: int


def singular_set_scan(m: PlanarField) -> list[SingularPoint]:
    """Centres of plaquettes with nonzero winding, ordered by (i, j)."""
    w = plaquette_windings(m)
    h = m.spec.h
    out = []
    for i, j in zip(*np.nonzero(w)):
        x = m.spec.origin[0] + (i + 0.5) * h
        y = m.spec.origin[1] + (j + 0.5) * h
        out.append(SingularPoint(float(x), float(y), int(w[i, j])))
    return out


def singular_set_csv(points: list[SingularPoint]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["x", "y", "winding"])
    for p in points:
        wr.writerow([repr(float(p.x)), repr(float(p.y)), int(p.winding)])
    return buf.getvalue()


def parse_singular_csv(text: str) -> list[SingularPoint]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return []
    if rows[0] != ["x", "y", "winding"]:
        raise ValueError(f"line 1: unexpected header {rows[0]!r}")
    out = []
    for lineno, r in enumerate(rows[1:], start=2):
        try:
            out.append(SingularPoint(float(r[0]), float(r[1]), int(r[2])))
        except (ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return out
