"""Harmonic extension to the disc and the coefficient maps A^phi, B^phi.

Derivatives are taken mode by mode in closed form. The extension of
``e^{ik theta}`` is ``z^k`` for k >= 0 and ``conj(z)^{|k|}`` for k < 0, so

    d1^a d2^b z^k       = k!/(k-n)! * i^b    * z^(k-n)
    d1^a d2^b conj(z)^k = k!/(k-n)! * (-i)^b * conj(z)^(k-n),   n = a + b.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import AngularFunction

_DISC_TOL = 1e-12


def as_complex(z) -> np.ndarray:
    """Accept complex points or real arrays of shape (..., 2)."""
    z = np.asarray(z)
    if np.iscomplexobj(z):
        return z
    if z.shape and z.shape[-1] == 2:
        return z[..., 0] + 1j * z[..., 1]
    return z.astype(complex)


def _check_disc(z: np.ndarray) -> None:
    if np.any(np.abs(z) > 1 + _DISC_TOL):
        raise ValueError("point outside the closed unit disc")


def _falling(k: np.ndarray, n: int) -> np.ndarray:
    out = np.ones_like(k, dtype=float)
    for j in range(n):
        out = out * (k - j)
    return out


@dataclass(frozen=True, eq=False)
class HarmonicFunction:
    """The harmonic extension of a band-limited boundary datum."""

    boundary: AngularFunction

    @classmethod
    def re_power(cls, k: int, k_max: int | None = None) -> "HarmonicFunction":
        """Re z^k."""
        k_max = max(k, 1) if k_max is None else k_max
        return cls(AngularFunction.cos(k, k_max))

    @classmethod
    def mode(cls, k: int, k_max: int | None = None) -> "HarmonicFunction":
        k_max = max(abs(k), 1) if k_max is None else k_max
        return cls(AngularFunction.mode(k, k_max))

    @property
    def is_real(self) -> bool:
        return self.boundary.is_real()

    def _series(self, z: np.ndarray, n: int, sign: int) -> np.ndarray:
        """sum_{k>=n} c_{sign*k} k!/(k-n)! w^(k-n), w = z or conj(z)."""
        K = self.boundary.k_max
        if n > K:
            return np.zeros_like(z)
        k = np.arange(n, K + 1)
        if sign > 0:
            c = self.boundary.coeffs[K + k]
        else:
            c = self.boundary.coeffs[K - k]
            c = np.where(k == 0, 0, c)  # the zero mode belongs to the z-series
        a = c * _falling(k, n)
        w = z if sign > 0 else np.conj(z)
        return np.polynomial.polynomial.polyval(w, a)

    def derivative(self, z, a: int = 0, b: int = 0) -> np.ndarray:
        """d1^a d2^b phi at z (complex array, or real (..., 2))."""
        z = as_complex(z)
        n = a + b
        out = (1j) ** b * self._series(z, n, +1) + (-1j) ** b * self._series(z, n, -1)
        return out.real if self.is_real else out

    def __call__(self, z) -> np.ndarray:
        return self.derivative(z, 0, 0)

    def derivatives(self, z, max_order: int = 3) -> dict[tuple[int, int], np.ndarray]:
        """All d1^a d2^b phi with a + b <= max_order, sharing the series sums."""
        z = as_complex(z)
        out = {}
        for n in range(max_order + 1):
            plus = self._series(z, n, +1)
            minus = self._series(z, n, -1)
            for b in range(n + 1):
                val = (1j) ** b * plus + (-1j) ** b * minus
                out[(n - b, b)] = val.real if self.is_real else val
        return out


def harmonic_extend(psi: AngularFunction, z) -> np.ndarray:
    """E psi at z = r e^{i theta}: sum c_k r^{|k|} e^{ik theta}; always complex."""
    z = as_complex(z)
    _check_disc(z)
    phi = HarmonicFunction(psi)
    return phi._series(z, 0, +1) + phi._series(z, 0, -1)


def _a_from_table(d, z1, z2):
    return (
        d[0, 0]
        - z1 * d[1, 0]
        - z2 * d[0, 1]
        + z1 * z2 * (d[1, 1] - z2 * d[3, 0] + z1 * d[2, 1])
        + 0.5 * (z1**2 - z2**2) * (d[2, 0] + z2 * d[2, 1] + z1 * d[3, 0])
    )


def a_phi(phi: HarmonicFunction, z) -> np.ndarray:
    """The scalar A^phi(z) multiplying div w in the harmonic-entropy production."""
    z = as_complex(z)
    _check_disc(z)
    d = phi.derivatives(z, 3)
    return _a_from_table(d, z.real, z.imag)


def b_phi(phi: HarmonicFunction, z) -> np.ndarray:
    """The vector B^phi(z); returns shape (..., 2)."""
    z = as_complex(z)
    _check_disc(z)
    d = phi.derivatives(z, 2)
    z1, z2 = z.real, z.imag
    b1 = d[1, 0] + 0.5 * z2 * d[1, 1] - 0.5 * z1 * d[0, 2]
    b2 = d[0, 1] - 0.5 * z2 * d[2, 0] + 0.5 * z1 * d[1, 1]
    return np.stack([b1, b2], axis=-1)


def b_phi_jacobian(phi: HarmonicFunction, z) -> np.ndarray:
    """d_j B_i(z) as shape (..., 2, 2), from third derivatives of phi."""
    z = as_complex(z)
    _check_disc(z)
    d = phi.derivatives(z, 3)
    z1, z2 = z.real, z.imag
    d1b1 = d[2, 0] + 0.5 * z2 * d[2, 1] - 0.5 * d[0, 2] - 0.5 * z1 * d[1, 2]
    d2b1 = 1.5 * d[1, 1] + 0.5 * z2 * d[1, 2] - 0.5 * z1 * d[0, 3]
    d1b2 = 1.5 * d[1, 1] - 0.5 * z2 * d[3, 0] + 0.5 * z1 * d[2, 1]
    d2b2 = d[0, 2] - 0.5 * z2 * d[2, 1] - 0.5 * d[2, 0] + 0.5 * z1 * d[1, 2]
    row1 = np.stack([d1b1, d2b1], axis=-1)
    row2 = np.stack([d1b2, d2b2], axis=-1)
    return np.stack([row1, row2], axis=-2)
