import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.signal import hilbert as analytic_signal

from aglab.entropy_core import (
    AngularFunction,
    a_symbol,
    hilbert_transform,
    multiplier_A,
    multiplier_A0,
    multiplier_A1,
)

coef = st.floats(-1, 1, allow_nan=False)


@st.composite
def real_functions(draw, k_max=8):
    c = np.zeros(2 * k_max + 1, dtype=complex)
    c[k_max] = draw(coef)
    for k in range(1, k_max + 1):
        a, b = draw(coef), draw(coef)
        c[k_max + k] = a + 1j * b
        c[k_max - k] = a - 1j * b
    return AngularFunction(c)


def test_mode_evaluation_matches_exponential():
    f = AngularFunction.mode(3, 5)
    t = np.linspace(0, 2 * np.pi, 17)
    assert np.allclose(f(t), np.exp(3j * t), atol=1e-14)


def test_from_callable_is_exact_on_the_band():
    f = AngularFunction.from_callable(lambda t: np.cos(2 * t) + 0.5 * np.sin(5 * t), 8)
    assert abs(f.coefficient(2) - 0.5) < 1e-14
    assert abs(f.coefficient(5) + 0.25j) < 1e-14
    assert f.is_real()


def test_sample_agrees_with_direct_sum():
    f = AngularFunction.from_modes({-2: 0.3, 1: 1j, 4: 0.2 - 0.1j}, 6)
    n = 32
    assert np.allclose(f.sample(n), f(2 * np.pi * np.arange(n) / n), atol=1e-13)
    with pytest.raises(ValueError):
        f.sample(12)


@settings(max_examples=50, deadline=None)
@given(real_functions())
def test_parseval(f):
    samples = f.sample(64)
    assert abs(np.mean(np.abs(samples) ** 2) - f.mean_square()) < 1e-12


@settings(max_examples=50, deadline=None)
@given(real_functions())
def test_real_input_gives_real_output(f):
    assert f.is_real()
    assert multiplier_A(f).is_real(1e-12)
    assert hilbert_transform(f).is_real(1e-14)
    assert np.max(np.abs(f.sample(64).imag)) < 1e-12


def test_complex_data_is_flagged_non_real():
    assert not AngularFunction.mode(2, 4).is_real()


@pytest.mark.parametrize("k,value", [(0, 1.0), (1, 0.0), (2, 0.0), (3, 4.0), (-3, 4.0)])
def test_multiplier_eigenvalues(k, value):
    out = multiplier_A(AngularFunction.mode(k, 4))
    assert abs(out.coefficient(k) - value) < 1e-14
    assert a_symbol(k) == value


@pytest.mark.parametrize("k", range(-16, 17))
def test_multiplier_splitting(k):
    psi = AngularFunction.mode(k, 16)
    split = 0.5 * multiplier_A0(psi) + 0.5 * multiplier_A1(psi)
    assert np.allclose(split.coeffs, multiplier_A(psi).coeffs, atol=1e-12)
    # the cubic part is minus the conjugate function of the third derivative
    assert np.allclose(multiplier_A0(psi).coeffs, (-hilbert_transform(psi.derivative(3))).coeffs, atol=1e-9)


@pytest.mark.parametrize("k", [1, 2, 7])
def test_hilbert_of_sine_is_minus_cosine(k):
    out = hilbert_transform(AngularFunction.sin(k, 8))
    assert np.allclose(out.coeffs, (-AngularFunction.cos(k, 8)).coeffs, atol=1e-15)


def test_hilbert_kills_the_mean_and_squares_to_minus_identity():
    assert np.all(hilbert_transform(AngularFunction.mode(0, 3)).coeffs == 0)
    c = AngularFunction.cos(1, 3)
    assert np.allclose(hilbert_transform(hilbert_transform(c)).coeffs, (-c).coeffs)


@settings(max_examples=25, deadline=None)
@given(real_functions())
def test_hilbert_matches_scipy_analytic_signal(f):
    # oracle: imaginary part of the analytic signal of the mean-free samples
    n = 128
    x = f.sample(n).real
    ref = np.imag(analytic_signal(x - x.mean()))
    assert np.allclose(hilbert_transform(f).sample(n).real, ref, atol=1e-12)


def test_text_round_trip():
    f = AngularFunction.from_modes({-3: 0.1 + 0.2j, 0: 1 / 3, 2: -0.7j}, 3)
    g = AngularFunction.from_text(f.to_text())
    assert np.array_equal(f.coeffs, g.coeffs)


def test_text_errors_report_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        AngularFunction.from_text("0 1 0\n1 2\n")


def test_shift_and_translate():
    f = AngularFunction.cos(1, 1)
    g = f.shift(1)
    t = np.linspace(0, 1, 5)
    assert np.allclose(g(t), f(t) * np.exp(1j * t))
    assert np.allclose(f.translate(0.3)(t), f(t + 0.3))


def test_rejects_even_length_tables():
    with pytest.raises(ValueError):
        AngularFunction(np.zeros(4))
