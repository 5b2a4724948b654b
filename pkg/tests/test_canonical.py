import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aglab.canonical_fields import (
    aviles_giga_energy,
    aviles_giga_gradient,
    conjugate,
    eikonal_residual,
    field_from_u,
    jump_cost,
    jump_field,
    jump_line_offset,
    jump_traces,
    minimize_aviles_giga,
    vortex,
    vortex_center,
    vortex_superposition,
)
from aglab.entropy_core import JinKohnEntropy
from aglab.field_lab import GridSpec, bump_family, field_from_function, weak_entropy_production
from aglab.identity_verifier.studies import REGRESSION_DESCENT, descent_study
from aglab.inclusion_map import singular_set_scan

# vortices


def test_vortex_examples():
    s = GridSpec.square(33, -1, 1)
    zeta = (0.013, -0.021)
    for alpha in (1, -1):
        m = vortex(zeta, alpha, s)
        i, j = s.index_of((zeta[0] + 0.5, zeta[1]))
        d = s.coords()[i, j] - np.array(zeta)
        if abs(d[1]) < 1e-12:
            assert np.allclose(m.values[i, j], (0, alpha))
        expected = alpha * np.array([-d[1], d[0]]) / np.hypot(*d)
        assert np.allclose(m.values[i, j], expected, atol=1e-15)
        assert np.max(np.abs(m.norm() - 1)) < 1e-14


def test_vortex_on_a_node_is_moved_half_a_cell():
    s = GridSpec.square(17, -1, 1)
    c = vortex_center((0.0, 0.0), s)
    assert c == pytest.approx((s.h / 2, s.h / 2))
    m = vortex((0.0, 0.0), 1, s)
    assert m.singular.sum() == 4
    assert np.all(m.singular[8:10, 8:10])


def test_vortex_rejects_bad_degree():
    with pytest.raises(ValueError):
        vortex((0.1, 0.1), 2, GridSpec.square(9))


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.6, 0.6), st.floats(-0.6, 0.6), st.sampled_from([1, -1]))
def test_vortex_is_unit_away_from_its_block(x, y, alpha):
    m = vortex((x, y), alpha, GridSpec.square(24, -1, 1))
    assert m.unit_defect() < 1e-12
    pts = singular_set_scan(m)
    assert len(pts) == 1 and pts[0].winding == 1


def test_superposition_and_conjugate_windings():
    s = GridSpec.square(48, -1, 1)
    m = vortex_superposition([(-0.4, 0.01), (0.4, 0.01)], s, orientations=[1, -1])
    assert sorted(p.winding for p in singular_set_scan(m)) == [-1, 1]
    flipped = conjugate(vortex((0.05, 0.02), 1, s))
    assert [p.winding for p in singular_set_scan(flipped)] == [-1]
    with pytest.raises(ValueError):
        vortex_superposition([(0.1, 0.1)], s, orientations=[1, 1])


def test_vortex_productions_vanish_at_second_order():
    maxima = []
    for n in (64, 128, 256):
        s = GridSpec.square(n, -1, 1, boundary_margin=2)
        c = vortex_center((0.0, 0.0), s)
        m = vortex((0.0, 0.0), 1, s)
        tests = bump_family(s, exclude=[c], pad=0.1)
        maxima.append(max(weak_entropy_production(m, JinKohnEntropy(j), tests).max_abs for j in (1, 2)))
    orders = np.log2(np.array(maxima[:-1]) / np.array(maxima[1:]))
    assert np.all(orders > 1.8)


# jumps


def test_jump_examples():
    plus, minus = jump_traces(np.pi / 2, (1.0, 0.0))
    assert np.allclose(plus, (0, 1)) and np.allclose(minus, (0, -1))
    plus, minus = jump_traces(np.pi / 6, (1.0, 0.0))
    assert np.allclose(plus, (np.cos(np.pi / 6), 0.5)) and np.allclose(minus, (np.cos(np.pi / 6), -0.5))


@pytest.mark.parametrize("beta", [0.0, -0.1, np.pi / 2 + 1e-9, 3.0])
def test_jump_rejects_half_angles_out_of_range(beta):
    with pytest.raises(ValueError):
        jump_traces(beta, (1.0, 0.0))


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-3, np.pi / 2), st.floats(0, 2 * np.pi))
def test_jump_traces_are_unit_and_normal_continuous(beta, a):
    nu = np.array([np.cos(a), np.sin(a)])
    plus, minus = jump_traces(beta, nu)
    assert np.linalg.norm(plus) == pytest.approx(1) and np.linalg.norm(minus) == pytest.approx(1)
    assert plus @ nu == pytest.approx(minus @ nu, abs=1e-14)
    assert np.linalg.norm(plus - minus) == pytest.approx(2 * np.sin(beta))


def test_jump_cost_examples():
    assert jump_cost(1, np.pi / 2, (1.0, 0.0)) == pytest.approx(4 / 3, abs=1e-15)
    assert abs(jump_cost(1, 1e-6, (1.0, 0.0))) < 1e-17


@pytest.mark.parametrize("beta", np.linspace(np.pi / 128, np.pi / 2, 64))
def test_jump_cost_is_cubic_in_the_jump(beta):
    plus, minus = jump_traces(beta, (1.0, 0.0))
    assert jump_cost(1, beta, (1.0, 0.0)) == pytest.approx(np.linalg.norm(plus - minus) ** 3 / 6, abs=1e-12)
    assert jump_cost(1, beta, (1.0, 0.0)) == pytest.approx((2 * np.sin(beta)) ** 3 / 6, abs=1e-12)


def test_jump_line_avoids_nodes():
    for n in (16, 17, 33):
        s = GridSpec.square(n, -1, 1)
        for nu in ((1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -2.0)):
            c = jump_line_offset(nu, s)
            proj = s.coords() @ (np.array(nu) / np.linalg.norm(nu))
            assert np.min(np.abs(proj - c)) > 1e-9 * s.h


def test_jump_field_is_unit_and_divergence_free_off_the_line():
    s = GridSpec.square(257, -1, 1, boundary_margin=2)
    m = jump_field(np.pi / 3, (1.0, 0.0), s)
    assert m.unit_defect() < 1e-15
    c = jump_line_offset((1.0, 0.0), s)
    tests = [t for t in bump_family(s) if abs(t.center[0] - c) > t.radius + 2 * s.h]
    assert tests
    # pairing the identity entropy measures the weak divergence
    ident = type("Identity", (), {"value": staticmethod(lambda z: np.asarray(z)), "kind": "identity"})()
    rep = weak_entropy_production(m, ident, tests)
    assert rep.max_abs < 1e-12


# energy


def test_energy_examples():
    s = GridSpec.square(17, 0, 1)  # dyadic spacing keeps the differences exact
    u = field_from_function(s, lambda x, y: x, role="scalar")
    assert aviles_giga_energy(u, 0.3) == 0.0
    zero = u.with_values(np.zeros(s.shape))
    area = (s.nx - 2) * (s.ny - 2) * s.h**2
    assert aviles_giga_energy(zero, 0.3) == pytest.approx(area / 0.3, rel=1e-14)
    with pytest.raises(ValueError):
        aviles_giga_energy(u, 0.0)


def test_energy_of_a_distance_function_falls_with_epsilon():
    s = GridSpec.square(33, 0.5, 1.5)
    u = field_from_function(s, lambda x, y: np.hypot(x, y), role="scalar")
    energies = [aviles_giga_energy(u, e) for e in (1.0, 0.5, 0.2, 0.1)]
    assert all(a > b for a, b in zip(energies, energies[1:]))
    assert energies == pytest.approx([0.514672, 0.257336, 0.102935, 0.0514679], rel=1e-5)


def test_energy_gradient_matches_differences():
    rng = np.random.default_rng(11)
    s = GridSpec.square(10, 0, 1)
    u = field_from_function(s, lambda x, y: 0.8 * x + 0.1 * np.sin(3 * y), role="scalar")
    u = u.with_values(np.array(u.values) + 0.01 * rng.normal(size=s.shape))
    G = aviles_giga_gradient(u, 0.2).values
    h = 1e-6
    for i, j in [(0, 0), (3, 4), (9, 2), (5, 5)]:
        up, dn = np.array(u.values), np.array(u.values)
        up[i, j] += h
        dn[i, j] -= h
        fd = (aviles_giga_energy(u.with_values(up), 0.2) - aviles_giga_energy(u.with_values(dn), 0.2)) / (2 * h)
        assert G[i, j] == pytest.approx(fd, rel=1e-6, abs=1e-9)


# descent


def test_descent_keeps_eikonal_affine_data():
    s = GridSpec.square(16, 0, 1)
    u0 = field_from_function(s, lambda x, y: 0.6 * x + 0.8 * y, role="scalar")
    res = minimize_aviles_giga(u0, 0.1, 50, 1e-2)
    assert np.array_equal(res.field.values, u0.values)
    assert len(res.trace) == 1


def test_descent_rejects_bad_arguments():
    u0 = field_from_function(GridSpec.square(16, 0, 1), lambda x, y: 0.9 * x, role="scalar")
    with pytest.raises(ValueError):
        minimize_aviles_giga(u0, 0.1, 10, 0.0)
    with pytest.raises(ValueError):
        minimize_aviles_giga(u0, 0.1, 10, 1e-3, boundary="periodic")


def test_descent_overflow_is_reported():
    u0 = field_from_function(GridSpec.square(16, 0, 1), lambda x, y: 1e200 * x, role="scalar")
    with pytest.raises(FloatingPointError):
        with np.errstate(over="ignore", invalid="ignore"):
            minimize_aviles_giga(u0, 0.1, 3, 1e-3)


def test_fixed_boundary_ring_is_frozen_and_energy_monotone():
    s = GridSpec.square(16, 0, 1)
    u0 = field_from_function(s, lambda x, y: 0.9 * x + 0.05 * np.sin(5 * y), role="scalar")
    res = minimize_aviles_giga(u0, 0.1, 100, 1e-2)
    u = res.field.values
    for edge in (np.s_[0, :], np.s_[-1, :], np.s_[:, 0], np.s_[:, -1]):
        assert np.array_equal(u[edge], u0.values[edge])
    e = res.energies
    assert np.all(np.diff(e) <= 0)
    assert e[-1] < e[0]


def test_regression_descent_scenario():
    u0, res, ratio = descent_study()
    e = res.energies
    assert len(e) == REGRESSION_DESCENT.steps + 1
    assert np.all(np.diff(e) < 0)
    assert e[0] == pytest.approx(0.3145, abs=1e-4)
    assert e[-1] == pytest.approx(0.0209, abs=1e-4)
    assert ratio == pytest.approx(0.215, abs=1e-3)


def test_descent_lowers_jin_kohn_productions():
    s = GridSpec.square(16, 0, 1)
    u0 = field_from_function(
        s, lambda x, y: 0.9 * x + 0.05 * np.sin(np.pi * x) * np.sin(np.pi * y), role="scalar"
    )
    res = minimize_aviles_giga(u0, 0.1, 500, 1e-2, boundary="free")

    def production_l1(u):
        m = field_from_u(u)
        m = type(m)(type(m.spec)(m.spec.origin, m.spec.h, m.spec.nx, m.spec.ny, 1), m.values, "vector")
        tests = bump_family(m.spec, per_axis=3)
        return sum(weak_entropy_production(m, JinKohnEntropy(j), tests).l1 for j in (1, 2))

    assert production_l1(res.field) < production_l1(u0)


def test_trace_csv_layout():
    u0 = field_from_function(GridSpec.square(12, 0, 1), lambda x, y: 0.9 * x, role="scalar")
    res = minimize_aviles_giga(u0, 0.1, 5, 1e-3, boundary="free")
    lines = res.trace_csv().splitlines()
    assert lines[0] == "step,energy,step_size"
    assert len(lines) == len(res.trace) + 1
    assert lines[1].startswith("0,")


# potentials to fields


def test_field_from_u_examples():
    s = GridSpec.square(12, 0, 1)
    m = field_from_u(field_from_function(s, lambda x, y: x, role="scalar"))
    assert np.allclose(m.values, (0, 1))
    assert m.is_unit(1e-12)
    m = field_from_u(field_from_function(s, lambda x, y: y, role="scalar"))
    assert np.allclose(m.values, (-1, 0))
    assert not field_from_u(field_from_function(s, lambda x, y: 0.5 * y, role="scalar")).is_unit()


def test_distance_function_gives_the_vortex_at_second_order():
    errs = []
    for n in (33, 65, 129):
        s = GridSpec.square(n, 0.5, 1.5)
        m = field_from_u(field_from_function(s, lambda x, y: np.hypot(x, y), role="scalar"))
        X = m.spec.coords()
        exact = np.stack([-X[..., 1], X[..., 0]], -1) / np.hypot(X[..., 0], X[..., 1])[..., None]
        errs.append(np.max(np.abs(m.values - exact)))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders > 1.9)


def test_eikonal_residual():
    s = GridSpec.square(12, 0, 1)
    assert eikonal_residual(field_from_function(s, lambda x, y: 0.6 * x - 0.8 * y, role="scalar")) < 1e-14
    assert eikonal_residual(field_from_function(s, lambda x, y: 0.5 * x, role="scalar")) == pytest.approx(0.5)
