"""Finite-difference residuals of the algebraic identities behind the entropy calculus.

Each verify_* routine takes fields sampled on a grid, evaluates both sides of
one identity with centered differences and returns the max-norm residual over
the nodes one step in from the edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from ..entropy_core.entropies import CutoffEntropy, CutoffProfile, DEFAULT_CUTOFF, HarmonicEntropy, cutoff_extension
from ..entropy_core.harmonic import HarmonicFunction, a_phi, b_phi, b_phi_jacobian
from ..entropy_core.kset import jin_kohn_sigma
from ..entropy_core.spectral import AngularFunction, a_symbol, hilbert_transform
from ..field_lab.calculus import partials
from ..field_lab.grid import GridSpec, PlanarField

# ---------------------------------------------------------------- helpers


def _div(values: np.ndarray, h: float) -> np.ndarray:
    d1, _ = partials(values[..., 0], h)
    _, d2 = partials(values[..., 1], h)
    return d1 + d2


def _inner(a: np.ndarray) -> np.ndarray:
    return a[1:-1, 1:-1]


def _vector(w: PlanarField) -> np.ndarray:
    if w.role != "vector":
        raise ValueError("identity checks expect a vector field")
    return w.values


def jin_kohn_rhs(j: int, w: np.ndarray, h: float) -> np.ndarray:
    """Closed form of div Sigma_j(w) from first derivatives of w."""
    d11, d21 = partials(w[..., 0], h)  # d1 w1, d2 w1
    d12, d22 = partials(w[..., 1], h)  # d1 w2, d2 w2
    wi = _inner(w)
    w1, w2 = wi[..., 0], wi[..., 1]
    div = d11 + d22
    defect = 1 - w1**2 - w2**2
    if j == 1:
        return -2 * w1 * w2 * div + (d12 + d21) * defect
    return (w1**2 - w2**2) * div + (d22 - d11) * defect


# ---------------------------------------------------------------- identities


def verify_jin_kohn_divergence(w: PlanarField) -> tuple[float, float]:
    """Max residuals of div Sigma_j(w) against its closed form, j = 1, 2."""
    v, h = _vector(w), w.spec.h
    out = []
    for j in (1, 2):
        lhs = _div(jin_kohn_sigma(j, v), h)
        out.append(float(np.max(np.abs(lhs - jin_kohn_rhs(j, v, h)))))
    return out[0], out[1]


def decomposition_terms(w: np.ndarray, h: float) -> dict[str, np.ndarray]:
    d11, d21 = partials(w[..., 0], h)
    d12, d22 = partials(w[..., 1], h)
    wi = _inner(w)
    w1, w2 = wi[..., 0], wi[..., 1]
    div = d11 + d22
    n2 = w1**2 + w2**2
    g1 = -2 * w1 * w2
    g2 = w1**2 - w2**2
    ell = (1 + n2) * div + 2 * w1 * w2 * (d12 + d21) + (w2**2 - w1**2) * (d22 - d11)
    return {
        "div": div,
        "g1_term": g1 * _div(jin_kohn_sigma(1, w), h),
        "g2_term": g2 * _div(jin_kohn_sigma(2, w), h),
        "l_term": ell * (1 - n2),
    }


def verify_div_decomposition(w: PlanarField) -> float:
    """Residual of div w = G1 div Sigma_1(w) + G2 div Sigma_2(w) + L (1 - |w|^2)."""
    t = decomposition_terms(_vector(w), w.spec.h)
    return float(np.max(np.abs(t["div"] - t["g1_term"] - t["g2_term"] - t["l_term"])))


def _check_disc_range(w: np.ndarray) -> None:
    if np.max(np.hypot(w[..., 0], w[..., 1])) > 1 + 1e-12:
        raise ValueError("field leaves the closed unit disc")


def harmonic_identity_terms(phi: HarmonicFunction, w: PlanarField) -> dict[str, np.ndarray]:
    v, h = _vector(w), w.spec.h
    _check_disc_range(v)
    lhs = _div(HarmonicEntropy(phi).value(v), h)
    wi = _inner(v)
    n2 = wi[..., 0] ** 2 + wi[..., 1] ** 2
    a = a_phi(phi, wi)
    dB = b_phi_jacobian(phi, wi)
    weighted = (np.sum(v**2, axis=-1) - 1)[..., None] * b_phi(phi, v)
    return {
        "lhs": lhs,
        "a_term": a * _div(v, h),
        "b_term": _div(weighted, h),
        "sigma_terms": dB[..., 0, 1] * _div(jin_kohn_sigma(1, v), h) - dB[..., 0, 0] * _div(jin_kohn_sigma(2, v), h),
        "defect": 1 - n2,
    }


def verify_harmonic_entropy_identity(phi: HarmonicFunction, w: PlanarField) -> float:
    """Residual of div Phi(w) = A div w + div((|w|^2-1) B) + d2B1 div Sigma_1 - d1B1 div Sigma_2."""
    t = harmonic_identity_terms(phi, w)
    return float(np.max(np.abs(t["lhs"] - t["a_term"] - t["b_term"] - t["sigma_terms"])))


def verify_multiplier_on_modes(k_max: int, n_angles: int = 512) -> dict[int, float]:
    """max_theta |A^{E psi_k}(e^{i theta}) - a_k e^{ik theta}| for every |k| <= k_max."""
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    z = np.exp(1j * theta)
    out = {}
    for k in range(-k_max, k_max + 1):
        phi = HarmonicFunction.mode(k, max(abs(k), 1))
        direct = a_phi(phi, z)
        out[k] = float(np.max(np.abs(direct - a_symbol(k) * np.exp(1j * k * theta))))
    return out


def _check_annulus(w: np.ndarray) -> None:
    r = np.hypot(w[..., 0], w[..., 1])
    if np.min(r) <= 0.5 or np.max(r) > 1 + 1e-12:
        raise ValueError("field must take values in 1/2 < |w| <= 1")


def cutoff_identity_terms(Phi: CutoffEntropy, w: PlanarField) -> dict[str, np.ndarray]:
    v, h = _vector(w), w.spec.h
    _check_annulus(v)
    d1, d2 = partials(1 - np.sum(v**2, axis=-1), h)
    wi = _inner(v)
    psi = Phi.psi(wi)
    return {
        "lhs": _div(Phi.value(v), h),
        "psi_term": psi[..., 0] * d1 + psi[..., 1] * d2,
        "gamma_term": Phi.gamma(wi) * _div(v, h),
    }


def verify_cutoff_identity(
    circle_entropy: tuple[AngularFunction, AngularFunction], eta: CutoffProfile, w: PlanarField
) -> float:
    """Residual of div Phi~(w) = Psi(w) . grad(1 - |w|^2) + gamma(w) div w."""
    t = cutoff_identity_terms(cutoff_extension(circle_entropy, eta), w)
    return float(np.max(np.abs(t["lhs"] - t["psi_term"] - t["gamma_term"])))


# ---------------------------------------------------------------- conjugate-function example


def hilbert_example(n: int) -> AngularFunction:
    """sum_{k=2}^{n} sin(k theta) / (k log k)."""
    if n < 4:
        raise ValueError("n must be at least 4")
    k = np.arange(2, n + 1)
    amp = 1.0 / (k * np.log(k))
    c = np.zeros(2 * n + 1, dtype=complex)
    c[n + k] = -0.5j * amp
    c[n - k] = 0.5j * amp
    return AngularFunction(c)


class HilbertDemo(NamedTuple):
    sup_psi: float
    sup_h_psi: float


HILBERT_SAMPLES = 1 << 16


def hilbert_unboundedness_demo(n: int, samples: int = HILBERT_SAMPLES) -> HilbertDemo:
    psi = hilbert_example(n)
    return HilbertDemo(psi.sup_norm(samples), hilbert_transform(psi).sup_norm(samples))


def hilbert_value_at_zero(n: int) -> float:
    """H psi_n (0) from the coefficients."""
    return float(np.sum(hilbert_transform(hilbert_example(n)).coeffs).real)


def hilbert_reference_at_zero(n: int) -> float:
    k = np.arange(2, n + 1)
    return float(-np.sum(1.0 / (k * np.log(k))))


# ---------------------------------------------------------------- smooth test inputs


Sampler = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class SmoothCase:
    """A named closed-form field; ``kind`` picks the identity it feeds."""

    identity_id: str
    kind: str
    sampler: Sampler
    phi: HarmonicFunction | None = None
    circle: tuple[AngularFunction, AngularFunction] | None = None

    def field(self, spec: GridSpec) -> PlanarField:
        X, Y = np.meshgrid(spec.x, spec.y, indexing="ij")
        w1, w2 = np.broadcast_arrays(*self.sampler(X, Y))
        return PlanarField(spec, np.stack([w1, w2], axis=-1), "vector")

    def residual(self, spec: GridSpec) -> float:
        w = self.field(spec)
        if self.kind == "jin_kohn":
            return max(verify_jin_kohn_divergence(w))
        if self.kind == "decomposition":
            return verify_div_decomposition(w)
        if self.kind == "harmonic":
            return verify_harmonic_entropy_identity(self.phi, w)
        if self.kind == "cutoff":
            return verify_cutoff_identity(self.circle, DEFAULT_CUTOFF, w)
        raise ValueError(f"unknown identity kind {self.kind!r}")


def _polar(r, t):
    return r * np.cos(t), r * np.sin(t)


def default_cases() -> list[SmoothCase]:
    from ..entropy_core.entropies import circle_entropy_from_psi

    mixed = HarmonicFunction(AngularFunction.cos(2, 5) + 0.3 * AngularFunction.sin(5, 5))
    circle = circle_entropy_from_psi(AngularFunction.cos(3, 3) + 0.2 * AngularFunction.sin(2, 3))
    return [
        SmoothCase("jin_kohn:affine", "jin_kohn", lambda x, y: (x, y)),
        SmoothCase("jin_kohn:trig", "jin_kohn", lambda x, y: (np.sin(y), np.cos(x))),
        SmoothCase("decomposition:unit_phase", "decomposition", lambda x, y: _polar(1.0, x)),
        SmoothCase("decomposition:saddle", "decomposition", lambda x, y: (0.5 * x, -0.5 * y)),
        SmoothCase(
            "harmonic:re_z",
            "harmonic",
            lambda x, y: (0.5 * np.cos(y), 0.5 * np.sin(x)),
            phi=HarmonicFunction.re_power(1),
        ),
        SmoothCase(
            "harmonic:re_z4",
            "harmonic",
            lambda x, y: (0.5 * np.cos(y), 0.5 * np.sin(x)),
            phi=HarmonicFunction.re_power(4),
        ),
        SmoothCase("harmonic:re_z3", "harmonic", lambda x, y: _polar(1.0, x), phi=HarmonicFunction.re_power(3)),
        SmoothCase(
            "harmonic:mixed",
            "harmonic",
            lambda x, y: (0.6 * np.cos(x * y), 0.6 * np.sin(x + 0.5 * y)),
            phi=mixed,
        ),
        SmoothCase("cutoff:modulated", "cutoff", lambda x, y: _polar(0.8 + 0.1 * np.sin(x), y), circle=circle),
        SmoothCase("cutoff:unit", "cutoff", lambda x, y: _polar(1.0, x + 0.5 * y**2), circle=circle),
    ]


# ---------------------------------------------------------------- refinement


ORDER_THRESHOLD = 1.8
# residuals this small mean the discrete operators reproduce the identity exactly
EXACT_FLOOR = 1e-11
DEFAULT_GRIDS = (64, 128, 256)


def observed_orders(hs, residuals) -> list[float]:
    """log(r_k / r_{k+1}) / log(h_k / h_{k+1}) for consecutive grids."""
    out = []
    for (h0, r0), (h1, r1) in zip(zip(hs, residuals), zip(hs[1:], residuals[1:])):
        out.append(float(np.log(r0 / r1) / np.log(h0 / h1)) if r0 > 0 and r1 > 0 else float("nan"))
    return out


@dataclass(frozen=True)
class OrderStudy:
    identity_id: str
    hs: tuple[float, ...]
    residuals: tuple[float, ...]
    orders: tuple[float, ...]

    @property
    def exact(self) -> bool:
        return max(self.residuals) <= EXACT_FLOOR

    @property
    def passed(self) -> bool:
        if self.exact:
            return True
        return bool(self.orders) and all(o >= ORDER_THRESHOLD for o in self.orders)


def order_study(case: SmoothCase, grids=DEFAULT_GRIDS, lo: float = -1.0, hi: float = 1.0) -> OrderStudy:
    specs = [GridSpec.square(n, lo, hi) for n in grids]
    res = [case.residual(s) for s in specs]
    hs = [s.h for s in specs]
    return OrderStudy(case.identity_id, tuple(hs), tuple(res), tuple(observed_orders(hs, res)))
