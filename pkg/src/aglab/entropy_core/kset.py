"""Jin-Kohn entropies and the matrix curve K = {P(theta)}."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2 * np.pi


def perp(v) -> np.ndarray:
    """Multiplication by i: counterclockwise rotation by pi/2."""
    v = np.asarray(v, dtype=float)
    return np.stack([-v[..., 1], v[..., 0]], axis=-1)


def rotate(v, angle: float) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    c, s = np.cos(angle), np.sin(angle)
    return np.stack([c * v[..., 0] - s * v[..., 1], s * v[..., 0] + c * v[..., 1]], axis=-1)


def _check_index(j: int) -> None:
    if j not in (1, 2):
        raise ValueError(f"Jin-Kohn index must be 1 or 2, got {j!r}")


def jin_kohn_sigma(j: int, v) -> np.ndarray:
    """Sigma_j(v) for plane vectors v of shape (..., 2)."""
    _check_index(j)
    v = np.asarray(v, dtype=float)
    v1, v2 = v[..., 0], v[..., 1]
    if j == 1:
        out = (v2 * (1 - v1**2 - v2**2 / 3), v1 * (1 - v2**2 - v1**2 / 3))
    else:
        out = (-v1 * (1 - 2 * v1**2 / 3), v2 * (1 - 2 * v2**2 / 3))
    return np.stack(out, axis=-1)


def jin_kohn_jacobian(j: int, v) -> np.ndarray:
    """D Sigma_j(v)[..., a, b] = d Sigma_j^a / d v_b."""
    _check_index(j)
    v = np.asarray(v, dtype=float)
    v1, v2 = v[..., 0], v[..., 1]
    zero = np.zeros_like(v1)
    if j == 1:
        off = 1 - v1**2 - v2**2
        rows = ((-2 * v1 * v2, off), (off, -2 * v1 * v2))
    else:
        rows = ((-(1 - 2 * v1**2), zero), (zero, 1 - 2 * v2**2))
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def rotation_relation_residual(v) -> np.ndarray:
    """|Sigma_2(v) - R_{pi/4} Sigma_1(R_{-pi/4} v)|."""
    lhs = jin_kohn_sigma(2, v)
    rhs = rotate(jin_kohn_sigma(1, rotate(v, -np.pi / 4)), np.pi / 4)
    return np.linalg.norm(lhs - rhs, axis=-1)


def reduce_angle(theta):
    """Map to [0, 2 pi); values rounding up to 2 pi map to 0."""
    theta = np.asarray(theta, dtype=float)
    out = theta - TWO_PI * np.floor(theta / TWO_PI)
    # subnormal negatives survive the floor when theta / 2 pi underflows to -0
    out = np.where(out < 0, out + TWO_PI, out)
    out = np.where(out >= TWO_PI, 0.0, out)
    return out if out.ndim else float(out)


def p_matrix(theta) -> np.ndarray:
    """P(theta), vectorized: shape (..., 2, 2)."""
    t = np.asarray(theta, dtype=float)
    c, s = np.cos(t), np.sin(t)
    row1 = np.stack([-2 / 3 * c**3, 2 / 3 * s**3], axis=-1)
    row2 = np.stack([-s * (1 - 2 / 3 * s**2), -c * (1 - 2 / 3 * c**2)], axis=-1)
    return np.stack([row1, row2], axis=-2)


def p_matrix_derivative(theta, order: int = 1) -> np.ndarray:
    """d^order/dtheta^order P(theta) for order 1 or 2."""
    t = np.asarray(theta, dtype=float)
    c, s = np.cos(t), np.sin(t)
    if order == 1:
        row1 = np.stack([2 * c**2 * s, 2 * s**2 * c], axis=-1)
        row2 = np.stack([-c + 2 * s**2 * c, s - 2 * c**2 * s], axis=-1)
    elif order == 2:
        row1 = np.stack([2 * c**3 - 4 * c * s**2, 4 * s * c**2 - 2 * s**3], axis=-1)
        row2 = np.stack([s + 4 * s * c**2 - 2 * s**3, c + 4 * c * s**2 - 2 * c**3], axis=-1)
    else:
        raise ValueError("order must be 1 or 2")
    return np.stack([row1, row2], axis=-2)


@dataclass(frozen=True, eq=False)
class KMatrix:
    """A 2x2 real matrix, tagged with its angle when it lies exactly on K."""

    entries: np.ndarray
    theta: float | None = None

    def __post_init__(self):
        e = np.array(self.entries, dtype=float).reshape(2, 2)
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    def to_text(self) -> str:
        return " ".join(repr(float(x)) for x in self.entries.ravel()) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "KMatrix":
        vals = [float(x) for x in text.split()]
        if len(vals) != 4:
            raise ValueError(f"expected 4 row-major floats, got {len(vals)}")
        return cls(np.array(vals))


def p_of_theta(theta: float) -> KMatrix:
    t = reduce_angle(theta)
    return KMatrix(p_matrix(t), theta=t)


def p_rows_from_sigma(theta: float) -> np.ndarray:
    """(i Sigma_1(e^{i theta}); i Sigma_2(e^{i theta})), the defining form of P."""
    e = np.array([np.cos(theta), np.sin(theta)])
    return np.stack([perp(jin_kohn_sigma(1, e)), perp(jin_kohn_sigma(2, e))])


@dataclass(frozen=True)
class CoercivityEstimate:
    c0: float
    theta1: float
    theta2: float
    n_samples: int


def coercivity_scan(n_samples: int, chunk: int = 256, exclude_below: float = 1e-9) -> CoercivityEstimate:
    """Sampled min of det(P(t1)-P(t2)) / |P(t1)-P(t2)|^4 over t1 != t2 on an n-point grid.

    Pairs with |P(t1)-P(t2)| < ``exclude_below`` are skipped.
    """
    if n_samples < 8:
        raise ValueError("n_samples must be >= 8")
    theta = TWO_PI * np.arange(n_samples) / n_samples
    P = p_matrix(theta)
    best, arg = np.inf, (0, 0)
    for start in range(0, n_samples, chunk):
        D = P[start : start + chunk, None] - P[None, :]
        det = D[..., 0, 0] * D[..., 1, 1] - D[..., 0, 1] * D[..., 1, 0]
        n2 = np.sum(D**2, axis=(-1, -2))
        ok = n2 >= exclude_below**2
        ratio = np.where(ok, det / np.where(ok, n2, 1.0) ** 2, np.inf)
        flat = int(np.argmin(ratio))
        i, j = divmod(flat, n_samples)
        if ratio[i, j] < best:
            best, arg = float(ratio[i, j]), (start + i, j)
    return CoercivityEstimate(best, float(theta[arg[0]]), float(theta[arg[1]]), n_samples)
