"""Weak entropy productions against bump test functions, and the mollified production ratio."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..entropy_core.entropies import DiscEntropy
from .calculus import grown_mask, jacobian
from .grid import GridSpec, PlanarField
from .mollify import MollifierKernel, mollify, p_eps

_E = np.exp(1.0)


def _bump1d(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Profile e * exp(-1/(1-s^2)) (value 1 at 0) and its derivative."""
    inside = np.abs(s) < 1
    q = np.where(inside, 1 - s**2, 1.0)
    b = np.where(inside, _E * np.exp(-1.0 / q), 0.0)
    db = np.where(inside, b * (-2 * s / q**2), 0.0)
    return b, db


@dataclass(frozen=True)
class TestBump:
    """zeta(x) = b((x1-c1)/r) b((x2-c2)/r); support is the open square of half-width r."""

    __test__ = False  # not a pytest class

    center: tuple[float, float]
    radius: float
    test_id: str = ""

    def evaluate(self, spec: GridSpec) -> tuple[np.ndarray, np.ndarray]:
        """(zeta, grad zeta) on the grid nodes."""
        s1 = (spec.x - self.center[0]) / self.radius
        s2 = (spec.y - self.center[1]) / self.radius
        b1, db1 = _bump1d(s1)
        b2, db2 = _bump1d(s2)
        zeta = np.outer(b1, b2)
        grad = np.stack([np.outer(db1, b2), np.outer(b1, db2)], axis=-1) / self.radius
        return zeta, grad

    def contains(self, point, pad: float = 0.0) -> bool:
        return bool(
            abs(point[0] - self.center[0]) < self.radius + pad and abs(point[1] - self.center[1]) < self.radius + pad
        )

    def inside(self, spec: GridSpec) -> bool:
        x0, x1, y0, y1 = spec.interior_extent()
        c, r, tol = self.center, self.radius, 1e-9 * spec.h
        return c[0] - r >= x0 - tol and c[0] + r <= x1 + tol and c[1] - r >= y0 - tol and c[1] + r <= y1 + tol


def bump_family(
    spec: GridSpec,
    radii: Sequence[float] | None = None,
    per_axis: int = 4,
    exclude: Iterable = (),
    pad: float | None = None,
) -> list[TestBump]:
    """Bumps on a per_axis x per_axis lattice of centres for each radius.

    Bumps whose support would leave the interior, or whose support (grown by
    ``pad``, default 2h) contains an excluded point, are dropped.
    """
    x0, x1, y0, y1 = spec.interior_extent()
    if radii is None:
        half = min(x1 - x0, y1 - y0) / 2
        radii = (half / 6, half / 4, half / 3)
    pad = 2 * spec.h if pad is None else pad
    exclude = [tuple(p) for p in exclude]
    out = []
    for k, r in enumerate(radii):
        cx = np.linspace(x0 + r, x1 - r, per_axis)
        cy = np.linspace(y0 + r, y1 - r, per_axis)
        for a, px in enumerate(cx):
            for b, py in enumerate(cy):
                bump = TestBump((float(px), float(py)), float(r), f"r{k}_{a}_{b}")
                if any(bump.contains(p, pad) for p in exclude):
                    continue
                out.append(bump)
    return out


@dataclass(frozen=True)
class ProductionReport:
    tests: tuple[TestBump, ...]
    pairings: np.ndarray
    label: str = ""
    pointwise: PlanarField | None = field(default=None, compare=False)

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.pairings), initial=0.0))

    @property
    def l1(self) -> float:
        return float(np.sum(np.abs(self.pairings)))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["test_id", "center_x", "center_y", "radius", "pairing"])
        for t, p in zip(self.tests, self.pairings):
            w.writerow([t.test_id, repr(float(t.center[0])), repr(float(t.center[1])), repr(float(t.radius)), repr(float(p))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, label: str = "") -> "ProductionReport":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            return cls((), np.zeros(0), label)
        if rows[0] != ["test_id", "center_x", "center_y", "radius", "pairing"]:
            raise ValueError(f"line 1: unexpected header {rows[0]!r}")
        tests, vals = [], []
        for lineno, row in enumerate(rows[1:], start=2):
            if len(row) != 5:
                raise ValueError(f"line {lineno}: expected 5 columns, got {len(row)}")
            try:
                tests.append(TestBump((float(row[1]), float(row[2])), float(row[3]), row[0]))
                vals.append(float(row[4]))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        return cls(tuple(tests), np.array(vals), label)


def weak_entropy_production(m: PlanarField, Phi: DiscEntropy, tests: Sequence[TestBump]) -> ProductionReport:
    """<div Phi(m), zeta> in flux form, -h^2 sum_nodes Phi(m) . grad zeta."""
    if m.role != "vector":
        raise ValueError("weak production expects a vector field")
    flux = Phi.value(m.values)
    h2 = m.spec.h**2
    out = np.empty(len(tests))
    for k, t in enumerate(tests):
        if not t.inside(m.spec):
            raise ValueError(f"test {t.test_id or t.center} touches the boundary margin")
        _, grad = t.evaluate(m.spec)
        out[k] = -h2 * np.sum(flux * grad)
    return ProductionReport(tuple(tests), out, label=getattr(Phi, "kind", ""))


@dataclass(frozen=True)
class RatioProfile:
    epsilons: tuple[float, ...]
    ratios: tuple[float, ...]

    @property
    def max(self) -> float:
        return max(self.ratios) if self.ratios else 0.0


FLOOR = 1e-12


def production_bound_profile(
    m: PlanarField,
    Phi: DiscEntropy,
    epsilons: Sequence[float],
    unit_tol: float = 1e-10,
    exclude_radius: int = 0,
) -> RatioProfile:
    """Per epsilon: max_x |div Phi(m_eps)| / (||Phi||_{C^2} (P_eps + |div m_eps|) + floor).

    P_eps enters as its maximum over the difference stencil of x. Nodes within ``exclude_radius`` nodes of a singular node are skipped.
    """
    if m.unit_defect() > unit_tol:
        raise ValueError(f"field is not unit valued (defect {m.unit_defect():.3g})")
    c2 = Phi.c2_norm()
    ratios = []
    for eps in epsilons:
        kernel = MollifierKernel.build(eps, m.spec.h)
        me = mollify(m, kernel)
        J = jacobian(me)
        inner = me.crop(1)
        div_phi = Phi.divergence_of(inner.values, J)
        div_m = np.trace(J, axis1=-2, axis2=-1)
        pe = p_eps(m, eps).values
        if pe.shape[0] != inner.spec.nx + 2:
            raise ValueError("internal crop mismatch")
        # P_eps over the same 5-point cross that the centred differences of m_eps read
        pe_vals = np.maximum.reduce(
            [pe[1:-1, 1:-1], pe[2:, 1:-1], pe[:-2, 1:-1], pe[1:-1, 2:], pe[1:-1, :-2]]
        )
        ratio = np.abs(div_phi) / (c2 * (pe_vals + np.abs(div_m)) + FLOOR)
        mask = grown_mask(inner.singular, exclude_radius) if exclude_radius else np.zeros_like(inner.singular)
        ratio = np.where(mask, 0.0, ratio)
        ratios.append(float(np.max(ratio)))
    return RatioProfile(tuple(float(e) for e in epsilons), tuple(ratios))


def production_bound_ratio(m: PlanarField, Phi: DiscEntropy, epsilons: Sequence[float], **kw) -> float:
    return production_bound_profile(m, Phi, epsilons, **kw).max
