"""Entropies Phi defined on (a neighbourhood of) the closed unit disc.

Every entropy exposes ``value(z)`` and ``jacobian(z)`` on plane arrays of
shape (..., 2); ``jacobian[..., a, b] = d Phi_a / d z_b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .harmonic import HarmonicFunction
from .kset import jin_kohn_jacobian, jin_kohn_sigma, perp
from .spectral import AngularFunction

CIRCLE_SAMPLES = 2048


class DiscEntropy:
    kind: str = "abstract"

    def value(self, z) -> np.ndarray:
        raise NotImplementedError

    def jacobian(self, z) -> np.ndarray:
        raise NotImplementedError

    def circle_band(self) -> int:
        raise NotImplementedError

    def divergence_of(self, w: np.ndarray, grad_w: np.ndarray) -> np.ndarray:
        """Chain rule: div Phi(w) = sum_{a,b} dPhi_a/dz_b * d_a w_b.

        ``grad_w[..., b, a] = d_a w_b``.
        """
        return np.einsum("...ab,...ba->...", self.jacobian(w), grad_w)

    def circle_pair(self) -> tuple[AngularFunction, AngularFunction]:
        """The restriction t -> Phi(e^{it}) as two real angular functions."""
        k = self.circle_band()
        f1 = AngularFunction.from_callable(lambda t: self.value(_unit(t))[..., 0], k)
        f2 = AngularFunction.from_callable(lambda t: self.value(_unit(t))[..., 1], k)
        return f1.real(), f2.real()

    def entropy_residual(self, n: int = CIRCLE_SAMPLES) -> float:
        """max_t |e^{it} . d/dt Phi(e^{it})| over n equispaced angles."""
        t = 2 * np.pi * np.arange(n) / n
        z = _unit(t)
        dphi = np.einsum("...ab,...b->...a", self.jacobian(z), perp(z))
        return float(np.max(np.abs(np.sum(z * dphi, axis=-1))))

    def c2_norm(self, n: int = CIRCLE_SAMPLES) -> float:
        """max over orders 0..2 of sup_t |d^k/dt^k Phi(e^{it})|."""
        f1, f2 = self.circle_pair()
        n = max(n, 4 * f1.k_max + 4)
        best = 0.0
        for order in range(3):
            a = f1.derivative(order).sample(n).real
            b = f2.derivative(order).sample(n).real
            best = max(best, float(np.max(np.hypot(a, b))))
        return best


def _unit(t) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.stack([np.cos(t), np.sin(t)], axis=-1)


class JinKohnEntropy(DiscEntropy):
    def __init__(self, j: int):
        jin_kohn_sigma(j, np.zeros(2))  # validates j
        self.j = j
        self.kind = f"jin_kohn_{j}"

    def value(self, z):
        return jin_kohn_sigma(self.j, z)

    def jacobian(self, z):
        return jin_kohn_jacobian(self.j, z)

    def circle_band(self) -> int:
        return 3

    def __repr__(self):
        return f"JinKohnEntropy({self.j})"


class HarmonicEntropy(DiscEntropy):
    """Phi(z) = phi(z) z + ((iz) . grad phi(z)) iz for a real harmonic phi."""

    kind = "harmonic"

    def __init__(self, phi: HarmonicFunction):
        if not phi.is_real:
            raise ValueError("harmonic entropies need real boundary data")
        self.phi = phi

    def _parts(self, z):
        z = np.asarray(z, dtype=float)
        d = self.phi.derivatives(z, 2)
        z1, z2 = z[..., 0], z[..., 1]
        s = -z2 * d[1, 0] + z1 * d[0, 1]
        return z1, z2, d, s

    def value(self, z):
        z1, z2, d, s = self._parts(z)
        phi = d[0, 0]
        return np.stack([phi * z1 - s * z2, phi * z2 + s * z1], axis=-1)

    def jacobian(self, z):
        z1, z2, d, s = self._parts(z)
        phi, p1, p2 = d[0, 0], d[1, 0], d[0, 1]
        p11, p12, p22 = d[2, 0], d[1, 1], d[0, 2]
        s1 = -z2 * p11 + p2 + z1 * p12
        s2 = -p1 - z2 * p12 + z1 * p22
        row1 = np.stack([p1 * z1 + phi - s1 * z2, p2 * z1 - s2 * z2 - s], axis=-1)
        row2 = np.stack([p1 * z2 + s1 * z1 + s, p2 * z2 + phi + s2 * z1], axis=-1)
        return np.stack([row1, row2], axis=-2)

    def circle_band(self) -> int:
        return self.phi.boundary.k_max + 2

    def __repr__(self):
        return f"HarmonicEntropy(k_max={self.phi.boundary.k_max})"


@dataclass(frozen=True)
class CutoffProfile:
    """A C^2 radial profile eta with eta = 0 on [0, 1/2] and [2, inf), eta(1) = 1."""

    eta: Callable[[np.ndarray], np.ndarray]
    deta: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"

    def validate(self, tol: float = 1e-12) -> None:
        inner = np.linspace(0.0, 0.5, 257)
        outer = np.linspace(2.0, 4.0, 257)
        if np.max(np.abs(self.eta(inner))) > tol or np.max(np.abs(self.eta(outer))) > tol:
            raise ValueError(f"cutoff profile {self.name!r} must vanish on [0, 1/2] and [2, inf)")
        if abs(float(self.eta(np.array(1.0))) - 1.0) > tol:
            raise ValueError(f"cutoff profile {self.name!r} must satisfy eta(1) = 1")


def _bump_eta(r):
    r = np.asarray(r, dtype=float)
    s = 2 * r - 2
    return np.where(np.abs(s) < 1, (1 - s**2) ** 3, 0.0)


def _bump_deta(r):
    r = np.asarray(r, dtype=float)
    s = 2 * r - 2
    return np.where(np.abs(s) < 1, -12 * s * (1 - s**2) ** 2, 0.0)


# (1 - (2r-2)^2)^3 on [1/2, 3/2]: the cube makes the splice at the endpoints C^2
DEFAULT_CUTOFF = CutoffProfile(_bump_eta, _bump_deta, name="cubed_parabola")


def circle_entropy_from_psi(psi: AngularFunction) -> tuple[AngularFunction, AngularFunction]:
    """Phi(e^{it}) = psi(t) e^{it} + psi'(t) i e^{it}, as a real pair."""
    if not psi.is_real():
        raise ValueError("psi must be real-valued")
    g = (psi + psi.derivative(1) * 1j).shift(1)
    return g.real(), g.imag()


class CutoffEntropy(DiscEntropy):
    """Phi~(z) = eta(|z|) Phi(z/|z|) for a circle entropy Phi."""

    kind = "cutoff"

    def __init__(self, circle: tuple[AngularFunction, AngularFunction], eta: CutoffProfile = DEFAULT_CUTOFF):
        eta.validate()
        f1, f2 = circle
        if not (f1.is_real(1e-12) and f2.is_real(1e-12)):
            raise ValueError("circle entropy components must be real")
        self.circle = (f1, f2)
        self._d = (f1.derivative(1), f2.derivative(1))
        self.eta = eta

    def _polar(self, z):
        z = np.asarray(z, dtype=float)
        r = np.hypot(z[..., 0], z[..., 1])
        t = np.arctan2(z[..., 1], z[..., 0])
        return z, r, t

    def _circle(self, fs, t):
        return np.stack([fs[0](t).real, fs[1](t).real], axis=-1)

    def value(self, z):
        z, r, t = self._polar(z)
        return self.eta.eta(r)[..., None] * self._circle(self.circle, t)

    def jacobian(self, z):
        z, r, t = self._polar(z)
        safe = np.where(r > 0, r, 1.0)
        radial = z / safe[..., None]
        angular = perp(z) / (safe**2)[..., None]
        phi = self._circle(self.circle, t)
        dphi = self._circle(self._d, t)
        jac = self.eta.deta(r)[..., None, None] * phi[..., :, None] * radial[..., None, :]
        jac = jac + self.eta.eta(r)[..., None, None] * dphi[..., :, None] * angular[..., None, :]
        return np.where((r > 0)[..., None, None], jac, 0.0)

    def gamma(self, z) -> np.ndarray:
        """z^perp . DPhi~(z) z^perp / |z|^2."""
        z = np.asarray(z, dtype=float)
        zp = perp(z)
        r2 = np.sum(z**2, axis=-1)
        num = np.einsum("...a,...ab,...b->...", zp, self.jacobian(z), zp)
        return np.where(r2 > 0, num / np.where(r2 > 0, r2, 1.0), 0.0)

    def psi(self, z) -> np.ndarray:
        """(-DPhi~(z) z + gamma(z) z) / (2|z|^2)."""
        z = np.asarray(z, dtype=float)
        r2 = np.sum(z**2, axis=-1)
        num = -np.einsum("...ab,...b->...a", self.jacobian(z), z) + self.gamma(z)[..., None] * z
        return np.where((r2 > 0)[..., None], num / np.where(r2 > 0, 2 * r2, 1.0)[..., None], 0.0)

    def structure_residual(self, z) -> np.ndarray:
        """|DPhi~ - (-2 Psi (x) z + gamma Id)| pointwise (Frobenius)."""
        z = np.asarray(z, dtype=float)
        recon = -2 * self.psi(z)[..., :, None] * z[..., None, :] + self.gamma(z)[..., None, None] * np.eye(2)
        return np.linalg.norm(self.jacobian(z) - recon, axis=(-2, -1))

    def regularity_bounds(self, n: int = 201, h: float = 1e-5) -> dict[str, float]:
        """Sampled sup of |gamma| and |D Psi| on [-2, 2]^2 next to ||Phi||_{C^2}."""
        x = np.linspace(-2, 2, n)
        X, Y = np.meshgrid(x, x, indexing="ij")
        z = np.stack([X, Y], axis=-1)
        dpsi = [
            (self.psi(z + h * e) - self.psi(z - h * e)) / (2 * h) for e in (np.array([1.0, 0]), np.array([0, 1.0]))
        ]
        dpsi_sup = max(float(np.max(np.abs(d))) for d in dpsi)
        return {
            "gamma_sup": float(np.max(np.abs(self.gamma(z)))),
            "dpsi_sup": dpsi_sup,
            "phi_c2": self.c2_norm(),
        }

    def circle_band(self) -> int:
        return max(self.circle[0].k_max, self.circle[1].k_max)

    def circle_pair(self):
        return self.circle

    def entropy_residual(self, n: int = CIRCLE_SAMPLES) -> float:
        t = 2 * np.pi * np.arange(n) / n
        z = _unit(t)
        dphi = self._circle(self._d, t)
        return float(np.max(np.abs(np.sum(z * dphi, axis=-1))))


def cutoff_extension(
    circle_entropy: tuple[AngularFunction, AngularFunction], eta: CutoffProfile = DEFAULT_CUTOFF
) -> CutoffEntropy:
    return CutoffEntropy(circle_entropy, eta)
