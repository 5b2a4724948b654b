"""Band-limited functions on the unit circle and diagonal Fourier multipliers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

DEFAULT_K_MAX = 64


@dataclass(frozen=True, eq=False)
class AngularFunction:
    """A trigonometric polynomial sum_{|k| <= k_max} c_k e^{ik theta}.

    ``coeffs[k + k_max]`` holds ``c_k``.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coefficient table must have odd length 2*k_max+1")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # construction -------------------------------------------------------

    @classmethod
    def zeros(cls, k_max: int = DEFAULT_K_MAX) -> "AngularFunction":
        return cls(np.zeros(2 * k_max + 1, dtype=complex))

    @classmethod
    def mode(cls, k: int, k_max: int = DEFAULT_K_MAX, amplitude: complex = 1.0) -> "AngularFunction":
        """The single mode ``amplitude * e^{ik theta}``."""
        if abs(k) > k_max:
            raise ValueError(f"mode {k} outside band |k| <= {k_max}")
        c = np.zeros(2 * k_max + 1, dtype=complex)
        c[k + k_max] = amplitude
        return cls(c)

    @classmethod
    def from_modes(cls, modes: dict[int, complex], k_max: int | None = None) -> "AngularFunction":
        if k_max is None:
            k_max = max([abs(k) for k in modes] + [0])
        c = np.zeros(2 * k_max + 1, dtype=complex)
        for k, a in modes.items():
            if abs(k) > k_max:
                raise ValueError(f"mode {k} outside band |k| <= {k_max}")
            c[k + k_max] += a
        return cls(c)

    @classmethod
    def cos(cls, k: int, k_max: int = DEFAULT_K_MAX) -> "AngularFunction":
        if k == 0:
            return cls.mode(0, k_max)
        return cls.from_modes({k: 0.5, -k: 0.5}, k_max)

    @classmethod
    def sin(cls, k: int, k_max: int = DEFAULT_K_MAX) -> "AngularFunction":
        if k == 0:
            return cls.zeros(k_max)
        return cls.from_modes({k: -0.5j, -k: 0.5j}, k_max)

    @classmethod
    def from_callable(
        cls, f: Callable[[np.ndarray], np.ndarray], k_max: int = DEFAULT_K_MAX, oversample: int = 4
    ) -> "AngularFunction":
        """Project ``f`` onto the band by trapezoid quadrature (exact for band-limited f)."""
        n = oversample * (2 * k_max + 2)
        theta = 2 * np.pi * np.arange(n) / n
        return cls.from_samples(np.asarray(f(theta), dtype=complex), k_max)

    @classmethod
    def from_samples(cls, values: np.ndarray, k_max: int) -> "AngularFunction":
        values = np.asarray(values, dtype=complex)
        n = values.size
        if n < 2 * k_max + 1:
            raise ValueError("need at least 2*k_max+1 equispaced samples")
        spectrum = np.fft.fft(values) / n
        k = np.arange(-k_max, k_max + 1)
        return cls(spectrum[k % n])

    # structure ----------------------------------------------------------

    @property
    def k_max(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def wavenumbers(self) -> np.ndarray:
        return np.arange(-self.k_max, self.k_max + 1)

    def coefficient(self, k: int) -> complex:
        if abs(k) > self.k_max:
            return 0j
        return complex(self.coeffs[k + self.k_max])

    def is_real(self, tol: float = 1e-14) -> bool:
        return bool(np.max(np.abs(self.coeffs - np.conj(self.coeffs[::-1])), initial=0.0) <= tol)

    def with_band(self, k_max: int) -> "AngularFunction":
        """Zero-pad or truncate to a new band."""
        c = np.zeros(2 * k_max + 1, dtype=complex)
        m = min(k_max, self.k_max)
        c[k_max - m : k_max + m + 1] = self.coeffs[self.k_max - m : self.k_max + m + 1]
        return AngularFunction(c)

    # evaluation ---------------------------------------------------------

    def __call__(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        k = self.wavenumbers
        phase = np.exp(1j * np.multiply.outer(theta, k))
        return phase @ self.coeffs

    def sample(self, n: int) -> np.ndarray:
        """Values at theta_j = 2 pi j / n via one inverse FFT."""
        if n <= 2 * self.k_max:
            raise ValueError(f"need n > 2*k_max = {2 * self.k_max} samples")
        spectrum = np.zeros(n, dtype=complex)
        spectrum[self.wavenumbers % n] = self.coeffs
        return np.fft.ifft(spectrum) * n

    def mean_square(self) -> float:
        """Circle average of |f|^2, computed from coefficients (Parseval)."""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def sup_norm(self, n: int | None = None) -> float:
        n = n or max(4096, 8 * (self.k_max + 1))
        return float(np.max(np.abs(self.sample(n))))

    # algebra ------------------------------------------------------------

    def _aligned(self, other: "AngularFunction"):
        k = max(self.k_max, other.k_max)
        return self.with_band(k).coeffs, other.with_band(k).coeffs

    def __add__(self, other):
        if not isinstance(other, AngularFunction):
            return NotImplemented
        a, b = self._aligned(other)
        return AngularFunction(a + b)

    def __sub__(self, other):
        if not isinstance(other, AngularFunction):
            return NotImplemented
        a, b = self._aligned(other)
        return AngularFunction(a - b)

    def __neg__(self):
        return AngularFunction(-self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, AngularFunction):
            return NotImplemented
        return AngularFunction(self.coeffs * scalar)

    __rmul__ = __mul__

    def conj(self) -> "AngularFunction":
        return AngularFunction(np.conj(self.coeffs[::-1]))

    def real(self) -> "AngularFunction":
        return AngularFunction(0.5 * (self.coeffs + np.conj(self.coeffs[::-1])))

    def imag(self) -> "AngularFunction":
        return AngularFunction(-0.5j * (self.coeffs - np.conj(self.coeffs[::-1])))

    def derivative(self, order: int = 1) -> "AngularFunction":
        return AngularFunction(self.coeffs * (1j * self.wavenumbers) ** order)

    def shift(self, s: int) -> "AngularFunction":
        """Multiply by e^{i s theta}; the band grows by |s|."""
        grown = self.with_band(self.k_max + abs(s))
        return AngularFunction(np.roll(grown.coeffs, s))

    def translate(self, alpha: float) -> "AngularFunction":
        """theta -> f(theta + alpha)."""
        return AngularFunction(self.coeffs * np.exp(1j * self.wavenumbers * alpha))

    # serialization -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{int(k)} {float(c.real)!r} {float(c.imag)!r}" for k, c in zip(self.wavenumbers, self.coeffs)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "AngularFunction":
        modes: dict[int, complex] = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: expected 'k re im', got {line!r}")
            try:
                k = int(parts[0])
                modes[k] = complex(float(parts[1]), float(parts[2]))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: {exc}") from None
        if not modes:
            return cls.zeros(0)
        return cls.from_modes(modes)


def apply_multiplier(psi: AngularFunction, symbol: Callable[[np.ndarray], np.ndarray]) -> AngularFunction:
    """Act diagonally on Fourier modes: c_k -> symbol(k) c_k."""
    return AngularFunction(psi.coeffs * symbol(psi.wavenumbers))


def a_symbol(k) -> np.ndarray:
    """Eigenvalue (|k|^3 - 2k^2 - |k| + 2)/2 of the harmonic-entropy multiplier."""
    k = np.abs(np.asarray(k, dtype=float))
    return (k**3 - 2 * k**2 - k + 2) / 2


def multiplier_A(psi: AngularFunction) -> AngularFunction:
    return apply_multiplier(psi, a_symbol)


def multiplier_A0(psi: AngularFunction) -> AngularFunction:
    """The cubic part, |k|^3."""
    return apply_multiplier(psi, lambda k: np.abs(k).astype(float) ** 3)


def multiplier_A1(psi: AngularFunction) -> AngularFunction:
    """The lower-order part, 2 - 2k^2 - |k|."""
    return apply_multiplier(psi, lambda k: 2.0 - 2.0 * k**2 - np.abs(k))


def hilbert_transform(psi: AngularFunction) -> AngularFunction:
    """Conjugate function: c_0 -> 0, c_k -> -i sign(k) c_k."""
    return apply_multiplier(psi, lambda k: -1j * np.sign(k))


def mode_table(ks: Iterable[int], k_max: int = DEFAULT_K_MAX) -> dict[int, AngularFunction]:
    return {k: AngularFunction.mode(k, k_max) for k in ks}
