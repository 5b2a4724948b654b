"""Seeded and scenario-level checks built on the field modules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..canonical_fields.aviles_giga import eikonal_residual, minimize_aviles_giga
from ..canonical_fields.generators import jump_field, vortex, vortex_center
from ..entropy_core.entropies import JinKohnEntropy
from ..field_lab.calculus import divergence
from ..field_lab.grid import Box, GridSpec, PlanarField
from ..field_lab.besov import besov_seminorm, lp_norm_on
from ..field_lab.mollify import MollifierKernel, commutator, difference_average, p_eps
from ..field_lab.production import bump_family, weak_entropy_production
from ..inclusion_map.winding import singular_set_scan
from ..rng import Lcg

# ---------------------------------------------------------------- commutator

COMMUTATOR_ENVELOPE = 10.0
# absolute slack for draws where both sides vanish up to rounding
COMMUTATOR_FLOOR = 1e-12


def _quadratic(rng: Lcg):
    a = rng.uniform(0, np.pi)
    lam = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1)])
    lam /= np.max(np.abs(lam))
    R = np.array([[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]])
    Q = R @ np.diag(lam) @ R.T
    b = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1)])
    return lambda z: 0.5 * np.einsum("...a,ab,...b->...", z, Q, z) + z @ b


def _wave(rng: Lcg):
    a = np.array([rng.uniform(-3, 3), rng.uniform(-3, 3)])
    n2 = float(a @ a) or 1.0
    c = rng.uniform(0, 2 * np.pi)
    return lambda z: np.sin(z @ a + c) / n2


def _draw_field(rng: Lcg, spec: GridSpec) -> PlanarField:
    kind = rng.integer(0, 3)
    if kind == 0:
        beta = rng.uniform(0.05, np.pi / 2)
        ang = rng.uniform(0, 2 * np.pi)
        return jump_field(beta, (np.cos(ang), np.sin(ang)), spec)
    if kind == 1:
        return vortex((rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)), 1 if rng.uniform() < 0.5 else -1, spec)
    k1, k2 = rng.uniform(-4, 4), rng.uniform(-4, 4)
    X = spec.coords()
    t = k1 * X[..., 0] + k2 * X[..., 1] ** 2
    return PlanarField(spec, np.stack([np.cos(t), np.sin(t)], axis=-1))


@dataclass(frozen=True)
class CommutatorStudy:
    ratios: tuple[float, ...]
    violations: int

    @property
    def max_ratio(self) -> float:
        return max(self.ratios)


def commutator_study(seed: int = 0, draws: int = 200, n: int = 64) -> CommutatorStudy:
    """|[Pi(m)]_eps - Pi(m_eps)| against ||D^2 Pi|| times the eps-ball mean of |D^z m|^2.

    Every drawn Pi has ||D^2 Pi|| = 1.
    """
    rng = Lcg(seed)
    spec = GridSpec.square(n, -1.0, 1.0)
    ratios, bad = [], 0
    for _ in range(draws):
        m = _draw_field(rng, spec)
        Pi = _quadratic(rng) if rng.uniform() < 0.5 else _wave(rng)
        eps = spec.h * rng.choice((2, 3, 4, 6))
        kernel = MollifierKernel.build(eps, spec.h)
        r = kernel.reach
        node = (rng.integer(r, spec.nx - r), rng.integer(r, spec.ny - r))
        lhs = float(np.abs(commutator(Pi, m, kernel, node)))
        rhs = difference_average(m, eps, node, 2.0)
        bad += lhs > COMMUTATOR_ENVELOPE * rhs + COMMUTATOR_FLOOR
        ratios.append(lhs / rhs if rhs > 0 else 0.0)
    return CommutatorStudy(tuple(ratios), int(bad))


# ---------------------------------------------------------------- cubic average vs Besov


@dataclass(frozen=True)
class ChainRow:
    label: str
    epsilon: float
    p_eps_norm: float
    besov_cubed: float

    @property
    def ratio(self) -> float:
        return self.p_eps_norm / self.besov_cubed


def besov_chain(m: PlanarField, U: Box, multiples=(4, 8, 16), label: str = "") -> list[ChainRow]:
    """||P_eps||_{L^{4/3}(U)} next to besov_seminorm(m, U)^3 for eps = k h."""
    b3 = besov_seminorm(m, U) ** 3
    rows = []
    for k in multiples:
        eps = k * m.spec.h
        rows.append(ChainRow(label, eps, lp_norm_on(p_eps(m, eps), U, 4 / 3), b3))
    return rows


def default_chain_fields(n: int = 128):
    spec = GridSpec.square(n, -1.0, 1.0)
    U = Box(-0.5, 0.5, -0.5, 0.5)
    return U, [("jump", jump_field(np.pi / 3, (1.0, 0.0), spec)), ("vortex", vortex((0.0, 0.0), 1, spec))]


# ---------------------------------------------------------------- vortex rigidity


@dataclass(frozen=True)
class VortexStudy:
    max_pairing: float
    n_tests: int
    max_divergence: float
    max_weak_divergence: float
    divergence_by_radius: tuple[tuple[float, float], ...]
    singular_points: tuple
    center: tuple[float, float]
    h: float


class _Identity:
    kind = "identity"

    @staticmethod
    def value(z):
        return np.asarray(z, dtype=float)


def vortex_study(n: int = 256, zeta=(0.0, 0.0), alpha: int = 1) -> VortexStudy:
    """Productions, divergence and the singular-set scan for a vortex on [-1, 1]^2."""
    spec = GridSpec.centered(n, n, 2.0 / (n - 1), boundary_margin=2)
    m = vortex(zeta, alpha, spec)
    c = vortex_center(zeta, spec)
    tests = bump_family(spec, exclude=[c])
    pair = max(weak_entropy_production(m, JinKohnEntropy(j), tests).max_abs for j in (1, 2))
    weak_div = weak_entropy_production(m, _Identity(), tests).max_abs
    div = divergence(m)
    off = ~div.singular
    max_div = float(np.max(np.abs(div.values[off])))
    X = div.spec.coords()
    dist = np.hypot(X[..., 0] - c[0], X[..., 1] - c[1])
    profile = tuple(
        (float(r), float(np.max(np.abs(div.values[dist > r])))) for r in (2 * spec.h, 0.1, 0.3, 0.5)
    )
    pts = tuple(singular_set_scan(m))
    return VortexStudy(pair, len(tests), max_div, weak_div, profile, pts, c, spec.h)


# ---------------------------------------------------------------- descent


@dataclass(frozen=True)
class DescentScenario:
    n: int = 16
    epsilon: float = 0.1
    steps: int = 500
    step_size: float = 1e-2
    slope: float = 0.9
    boundary: str = "free"


REGRESSION_DESCENT = DescentScenario()


def descent_study(sc: DescentScenario = REGRESSION_DESCENT):
    spec = GridSpec.square(sc.n, 0.0, 1.0)
    u0 = PlanarField(spec, sc.slope * spec.coords()[..., 0], "scalar")
    result = minimize_aviles_giga(u0, sc.epsilon, sc.steps, sc.step_size, boundary=sc.boundary)
    return u0, result, eikonal_residual(result.field) / eikonal_residual(u0)
