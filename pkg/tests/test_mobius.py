import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from halfhopf import (CircleFunction, MobiusMap, boundary_trace, compose, dilation_field, energy_spectral,
                      naturality_defect, trace_jacobian)
from halfhopf.mobius import TruncationError
from halfhopf.operators import half_laplacian
from halfhopf.spectral import max_coeff_diff

from conftest import COS, trig_polys

theta = np.linspace(0, 2 * np.pi, 41)


@st.composite
def maps(draw, a_max=0.4):
    r = draw(st.floats(0, a_max))
    t, m = draw(st.floats(0, 2 * np.pi)), draw(st.floats(0, 2 * np.pi))
    return MobiusMap(r * np.exp(1j * t), np.exp(1j * m))


def wrap(x):
    return np.angle(np.exp(1j * x))


def test_map_validation():
    with pytest.raises(ValueError):
        MobiusMap(1.0, 1)
    with pytest.raises(ValueError):
        MobiusMap(0.2, 1.1)
    m = MobiusMap(0.3 - 0.1j, np.exp(0.4j))
    assert MobiusMap.from_dict(m.to_dict()) == m


@given(maps(0.9))
def test_map_preserves_disc(m):
    z = 0.99 * np.exp(1j * theta)
    assert np.all(np.abs(m(z)) < 1)
    assert np.allclose(np.abs(m(np.exp(1j * theta))), 1, atol=1e-12)


def test_trace_examples():
    assert np.allclose(wrap(boundary_trace(MobiusMap(0, 1), theta) - theta - np.pi), 0, atol=1e-14)
    alpha = 0.7
    m = MobiusMap(0, np.exp(1j * alpha))
    assert np.allclose(wrap(boundary_trace(m, theta) - theta - alpha - np.pi), 0, atol=1e-14)
    assert np.allclose(wrap(boundary_trace(MobiusMap.rotation(alpha), theta) - theta - alpha), 0, atol=1e-14)


@given(maps(0.9))
def test_trace_is_argument(m):
    psi = boundary_trace(m, theta)
    assert np.allclose(np.exp(1j * psi), m(np.exp(1j * theta)), atol=1e-12)
    # continuous lift of a degree one map
    assert psi[-1] - psi[0] == pytest.approx(2 * np.pi, abs=1e-12)


@given(maps(0.9), maps(0.9))
def test_group_law_on_traces(m1, m2):
    both = boundary_trace(m1 @ m2, theta)
    assert np.allclose(wrap(both - boundary_trace(m1, boundary_trace(m2, theta))), 0, atol=1e-10)
    ident = boundary_trace(m1, boundary_trace(m1.inverse(), theta))
    assert np.allclose(wrap(ident - theta), 0, atol=1e-12)


def test_jacobian_examples():
    assert np.allclose(trace_jacobian(MobiusMap(0, 1j), theta), 1)
    assert trace_jacobian(MobiusMap(0.5, 1), 0.0) == pytest.approx(3.0)


@given(maps(0.9))
def test_jacobian_integral_and_derivative(m):
    M = 4096
    t = 2 * np.pi * np.arange(M) / M
    assert 2 * np.pi * np.mean(trace_jacobian(m, t)) == pytest.approx(2 * np.pi, rel=1e-10)
    h = 1e-6
    fd = (boundary_trace(m, theta + h) - boundary_trace(m, theta - h)) / (2 * h)
    assert np.allclose(fd, trace_jacobian(m, theta), rtol=1e-6)


def test_compose_examples():
    f = CircleFunction.from_dict({1: 0.3, -1: 0.3, 3: 0.2j, -3: -0.2j})
    g = compose(f, MobiusMap.rotation(0.9), N_out=3)
    assert np.allclose(np.abs(g.coeffs), np.abs(f.coeffs), atol=1e-15)
    e1 = CircleFunction.from_dict({1: 1.0}, real=False)
    h = compose(e1, MobiusMap(0.3, 1), N_out=64)
    assert energy_spectral(h) == pytest.approx(2 * np.pi, rel=1e-8)
    c = CircleFunction.constant([1.0, -2.0])
    assert max_coeff_diff(compose(c, MobiusMap(0.2j, 1), N_out=4), c.pad(4)) < 1e-15
    with pytest.raises(TruncationError):
        compose(e1, MobiusMap(0.8, 1), N_out=4)
    with pytest.raises(ValueError):
        compose(e1, MobiusMap(0.1, 1), oversample=2)


def test_compose_geometric_coefficients():
    # m(e^{it}) = mu a - mu (1-|a|^2) sum_{k>=1} conj(a)^{k-1} e^{ikt}
    a, mu = 0.35 - 0.2j, np.exp(0.3j)
    g = compose(CircleFunction.from_dict({1: 1.0}, real=False), MobiusMap(a, mu), N_out=40)
    assert g.coeff(0)[0] == pytest.approx(mu * a, abs=1e-14)
    k = np.arange(1, 41)
    ref = -mu * (1 - abs(a) ** 2) * np.conj(a) ** (k - 1)
    assert np.allclose(g.coeffs[41:, 0], ref, atol=1e-14)
    assert np.allclose(g.coeffs[:40, 0], 0, atol=1e-14)


def test_energy_deficit_is_truncated_tail():
    # at bandwidth one and |a| = 0.4 the energy missing from the 8N truncation is exactly the tail
    a = 0.4
    f = CircleFunction.from_dict({1: 1.0}, real=False)
    g = compose(f, MobiusMap(a, 1), N_out=8)
    k = np.arange(9, 400)
    tail = 2 * np.pi * (1 - a * a) ** 2 * np.sum(k * a ** (2 * (k - 1)))
    assert energy_spectral(f) - energy_spectral(g) == pytest.approx(tail, rel=1e-9)


@given(trig_polys(max_n=16, min_n=2), maps())
def test_energy_invariance(f, m):
    N_out = 8 * f.bandwidth
    E = energy_spectral(f)
    assume(E > 1e-12)
    assert abs(energy_spectral(compose(f, m, N_out=N_out)) - E) <= 1e-6 * E


@given(trig_polys(max_n=16, min_n=1), maps())
def test_naturality(f, m):
    scale = half_laplacian(f).l2_norm()
    assert naturality_defect(f, m, N_out=8 * f.bandwidth) <= 1e-6 * scale + 1e-15


def test_naturality_examples():
    cos = CircleFunction.from_dict(COS)
    f = CircleFunction.from_dict({1: 0.4, -1: 0.4, 4: 0.1j, -4: -0.1j})
    assert naturality_defect(f, MobiusMap.rotation(1.3), N_out=4) <= 1e-12
    assert naturality_defect(cos, MobiusMap(0.3, 1), N_out=96) <= 1e-7
    assert naturality_defect(CircleFunction.constant(2.0), MobiusMap(0.3j, 1), N_out=8) == 0


@given(trig_polys(max_n=6), maps(), maps())
def test_group_law_compose(f, m1, m2):
    N_out = 48
    lhs = compose(compose(f, m1, N_out=N_out), m2, N_out=N_out)
    rhs = compose(f, m1 @ m2, N_out=N_out)
    assert max_coeff_diff(lhs, rhs) <= 1e-6 * (1 + np.abs(f.coeffs).max())


def test_dilation_examples():
    t = np.linspace(0, 6, 13)
    assert np.allclose(dilation_field(0.0).evaluate(t)[:, 0], -2 * np.sin(t))
    assert np.allclose(dilation_field(np.pi / 2).evaluate(t)[:, 0], 2 * np.cos(t))
    for d in (0.0, 1.0, 4.0):
        assert dilation_field(d).evaluate(d)[0] == pytest.approx(0, abs=1e-15)


@pytest.mark.parametrize("delta", [0.0, 0.8, 2.5])
def test_dilation_generates_flow(delta):
    # d/dt of the trace of a_t = t e^{i delta} at t = 0, read at the image point
    errs = []
    for t in (1e-3, 5e-4):
        m = MobiusMap(t * np.exp(1j * delta), 1)
        vel = wrap(boundary_trace(m, theta) - boundary_trace(MobiusMap(0, 1), theta)) / t
        errs.append(np.abs(vel - dilation_field(delta).evaluate(theta + np.pi)[:, 0]).max())
    assert errs[0] < 1e-2 and errs[1] < 0.6 * errs[0]
