import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize

from aglab.entropy_core import (
    KMatrix,
    coercivity_scan,
    jin_kohn_jacobian,
    jin_kohn_sigma,
    p_matrix,
    p_matrix_derivative,
    p_of_theta,
    p_rows_from_sigma,
    perp,
    reduce_angle,
    rotate,
    rotation_relation_residual,
)

angles = st.floats(-20, 20, allow_nan=False)
points = st.tuples(st.floats(-1, 1), st.floats(-1, 1)).map(np.array)


def test_sigma_reference_values():
    assert np.allclose(jin_kohn_sigma(1, [1.0, 0.0]), [0.0, 2 / 3])
    assert np.allclose(jin_kohn_sigma(2, [1.0, 0.0]), [-1 / 3, 0.0])
    assert np.allclose(jin_kohn_sigma(1, [0.0, 0.0]), [0.0, 0.0])


def test_sigma_rejects_bad_index():
    with pytest.raises(ValueError):
        jin_kohn_sigma(3, [0.0, 0.0])


@settings(max_examples=60, deadline=None)
@given(points)
def test_rotation_relation(v):
    assert np.max(np.abs(rotation_relation_residual(v))) < 1e-14


@pytest.mark.parametrize("j", [1, 2])
def test_sigma_jacobian_matches_differences(j):
    rng = np.random.default_rng(j)
    v = rng.uniform(-1, 1, (30, 2))
    h = 1e-6
    for b in range(2):
        e = np.eye(2)[b]
        fd = (jin_kohn_sigma(j, v + h * e) - jin_kohn_sigma(j, v - h * e)) / (2 * h)
        assert np.allclose(jin_kohn_jacobian(j, v)[..., :, b], fd, atol=1e-8)


@pytest.mark.parametrize("j", [1, 2])
@settings(max_examples=40, deadline=None)
@given(t=st.floats(0, 2 * np.pi))
def test_tangential_derivative_is_orthogonal_to_position(j, t):
    z = np.array([np.cos(t), np.sin(t)])
    assert abs(z @ jin_kohn_jacobian(j, z) @ perp(z)) < 1e-14


def test_rotate_and_perp():
    assert np.allclose(perp([1.0, 0.0]), [0.0, 1.0])
    assert np.allclose(rotate([1.0, 0.0], np.pi / 2), [0.0, 1.0])


@settings(max_examples=60, deadline=None)
@given(angles)
def test_reduce_angle_range_and_periodicity(t):
    r = reduce_angle(t)
    assert 0 <= r < 2 * np.pi
    assert np.allclose(p_matrix(r), p_matrix(t), atol=1e-12)


def test_reduce_angle_never_returns_two_pi():
    assert reduce_angle(-1e-18) == 0.0
    assert reduce_angle(2 * np.pi) == 0.0


@settings(max_examples=60, deadline=None)
@given(angles)
def test_closed_form_equals_defining_rows(t):
    assert np.allclose(p_matrix(t), p_rows_from_sigma(t), atol=1e-14)


def test_reference_matrices():
    assert np.allclose(p_of_theta(0.0).entries, [[-2 / 3, 0], [0, -1 / 3]], atol=1e-15)
    assert np.allclose(p_of_theta(np.pi / 2).entries, [[0, 2 / 3], [-1 / 3, 0]], atol=1e-15)


@pytest.mark.parametrize("order", [1, 2])
def test_derivatives_match_differences(order):
    t = np.linspace(0, 2 * np.pi, 37)
    h = 1e-5
    lower = p_matrix if order == 1 else (lambda s: p_matrix_derivative(s, 1))
    fd = (lower(t + h) - lower(t - h)) / (2 * h)
    assert np.allclose(p_matrix_derivative(t, order), fd, atol=1e-8)
    with pytest.raises(ValueError):
        p_matrix_derivative(t, 3)


def test_kmatrix_text_round_trip_and_immutability():
    k = p_of_theta(1.234)
    back = KMatrix.from_text(k.to_text())
    assert np.array_equal(back.entries, k.entries)
    with pytest.raises(ValueError):
        k.entries[0, 0] = 1.0
    with pytest.raises(ValueError):
        KMatrix.from_text("1 2 3")


def test_coercivity_scan_refines_downward_and_stays_positive():
    values = [coercivity_scan(n).c0 for n in (64, 128, 256, 512)]
    assert all(v > 0 for v in values)
    assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))
    assert abs(values[-1] - values[-2]) < 1e-3


def test_coercivity_scan_bounds_continuous_minimiser():
    # oracle: a continuous local search started from the scan argmin stays close
    est = coercivity_scan(256)

    def ratio(x):
        D = p_matrix(x[0]) - p_matrix(x[1])
        n2 = np.sum(D**2)
        return np.linalg.det(D) / n2**2 if n2 > 1e-8 else np.inf

    res = minimize(ratio, [est.theta1, est.theta2], method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14})
    assert res.fun > 0
    assert res.fun <= est.c0 + 1e-12
    assert est.c0 - res.fun < 1e-3


def test_coercivity_scan_rejects_tiny_grids():
    with pytest.raises(ValueError):
        coercivity_scan(4)


@pytest.mark.parametrize("t", [-5e-324, -1e-300, 5e-324])
def test_reduce_angle_handles_subnormals(t):
    r = reduce_angle(t)
    assert 0 <= r < 2 * np.pi
