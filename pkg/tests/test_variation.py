import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfhopf import (CircleFunction, balancing_defect, directional_energy_derivative, inner_variation,
                      noether_residual, pair_with_field, pohozaev_residual, random_trig,
                      variation_continuity_probe)
from halfhopf.energy import h1_norm_sq
from halfhopf.flows import blaschke_trace
from halfhopf.mobius import dilation_field
from halfhopf.spectral import max_coeff_diff
from halfhopf.variation import (FlowIntegrationError, conservation_residual, first_moments,
                                rotation_pohozaev, sine_field)

from conftest import COS, COS2, SIN, trig_polys, vec

cos = CircleFunction.from_dict(COS)
sinx = CircleFunction.from_dict(SIN)
one = CircleFunction.constant(1.0)
half_sin2 = CircleFunction.from_dict({2: 0.25j, -2: -0.25j})  # -(1/2) sin 2x


def test_inner_variation_examples(circle):
    assert np.abs(inner_variation(circle).coeffs).max() < 1e-16
    assert max_coeff_diff(inner_variation(cos), half_sin2) < 1e-16
    assert not np.any(inner_variation(CircleFunction.constant([1.0, 2.0])).coeffs)


def test_pair_examples():
    assert pair_with_field(half_sin2, one) == 0
    assert pair_with_field(CircleFunction.zeros(3), sinx) == 0
    f = vec(COS, {2: 0.3, -2: 0.3, 1: 0.1j, -1: -0.1j})
    d = 0.4
    assert pair_with_field(inner_variation(f), sine_field(d)) == pytest.approx(pohozaev_residual(f, d), abs=1e-15)
    with pytest.raises(ValueError):
        pair_with_field(vec(COS, COS), one)


def test_sine_field():
    t = np.linspace(0, 6, 9)
    assert np.allclose(sine_field(0.3).evaluate(t)[:, 0], np.sin(0.3 - t))


def test_energy_derivative_examples(witness):
    b = blaschke_trace([0.4j, -0.3], N=48)
    assert abs(directional_energy_derivative(b, sinx, 1e-3, bandwidth=96)) <= 1e-6
    assert abs(directional_energy_derivative(witness, one, 1e-3)) <= 1e-10
    ref = 2 * pair_with_field(inner_variation(witness), sinx)
    assert directional_energy_derivative(witness, sinx, 1e-3) == pytest.approx(ref, abs=1e-4)


def test_energy_derivative_order(rng):
    f = random_trig(rng, 6, 2)
    X = CircleFunction.from_dict({2: 0.3 - 0.1j, -2: 0.3 + 0.1j, 1: 0.2j, -1: -0.2j})
    ref = 2 * pair_with_field(inner_variation(f), X)
    errs = [abs(directional_energy_derivative(f, X, h) - ref) for h in (1e-2, 5e-3, 2.5e-3)]
    orders = np.log2(np.array(errs[:-1]) / errs[1:])
    assert np.all(orders >= 1.9)


def test_energy_derivative_guards():
    with pytest.raises(ValueError):
        directional_energy_derivative(cos, sinx, 0.0)
    with pytest.raises(FlowIntegrationError):
        directional_energy_derivative(cos, CircleFunction.from_dict({12: 3.0, -12: 3.0}), 0.5, bandwidth=8)


def test_balancing_examples(circle, witness):
    assert balancing_defect(circle) == (pytest.approx(0, abs=1e-14), pytest.approx(0, abs=1e-14))
    C, S = first_moments(circle)
    assert np.allclose(C, [np.pi, 0]) and np.allclose(S, [0, np.pi])
    assert balancing_defect(vec(COS2, {0: 1.0})) == (0, 0)
    re, im = balancing_defect(witness)
    assert re == pytest.approx(np.pi ** 2, abs=1e-12) and im == 0
    with pytest.raises(ValueError):
        balancing_defect(CircleFunction.from_dict({1: 1.0}, real=False))


def test_first_moments_quadrature(rng):
    f = random_trig(rng, 5, 3)
    t = 2 * np.pi * np.arange(64) / 64
    U = f.evaluate(t)
    C, S = first_moments(f)
    assert np.allclose(C, 2 * np.pi * np.mean(U * np.cos(t)[:, None], axis=0))
    assert np.allclose(S, 2 * np.pi * np.mean(U * np.sin(t)[:, None], axis=0))


@pytest.mark.parametrize("f", [cos, cos + CircleFunction.from_dict(COS2), CircleFunction.constant(2.0)])
def test_pohozaev_examples(f):
    for d in (0.0, 0.7, 2.0):
        assert abs(pohozaev_residual(f, d)) < 1e-15


@given(trig_polys(max_n=32), st.lists(st.floats(0, 2 * np.pi), min_size=16, max_size=16))
def test_pohozaev_all_maps(f, deltas):
    tol = 1e-10 * (1 + h1_norm_sq(f))
    assert all(abs(pohozaev_residual(f, d)) <= tol for d in deltas)
    assert abs(rotation_pohozaev(f)) <= 1e-12


def test_noether_examples():
    assert np.abs(noether_residual(cos, one).coeffs).max() < 1e-16
    b = blaschke_trace([0.5, -0.2j], N=96)
    X = dilation_field(1.1)
    assert noether_residual(b, X).l2_norm() <= 1e-9
    assert conservation_residual(b, X).l2_norm() <= 1e-9
    c = CircleFunction.constant([1.0, -1.0])
    assert not np.any(noether_residual(c, X).coeffs)


@given(trig_polys(max_n=16), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_noether_identity_conformal(f, a, b, c):
    X = CircleFunction.from_dict({0: a, 1: (b - 1j * c) / 2, -1: (b + 1j * c) / 2}, real=True)
    scale = 1 + h1_norm_sq(f)
    assert np.abs(noether_residual(f, X, conformal=True).coeffs).max() <= 1e-11 * scale


def test_noether_non_conformal_witness(rng):
    X = CircleFunction.from_dict({2: -0.5j, -2: 0.5j})  # sin 2x
    with pytest.raises(ValueError):
        noether_residual(cos, X, conformal=True)
    f = random_trig(rng, 4, 2)
    assert noether_residual(f, X).l2_norm() > 1e-3


def test_stationarity_transfer():
    # c_2 = 0 for holomorphic traces, which forces both balancing identities
    for zeros in ([0.2], [0.5j, -0.3], [0.1, 0.2, -0.4j]):
        b = blaschke_trace(zeros, N=64)
        re, im = balancing_defect(b)
        assert re <= 1e-12 and im <= 1e-12


def test_continuity_examples():
    f = random_trig(np.random.default_rng(3), 5, 2)
    p = variation_continuity_probe(f, [5, 6, 9])
    assert np.ptp(p.pairings) == 0 and p.fitted_constant == 0
    z = variation_continuity_probe(CircleFunction.zeros(4, 2), [1, 2, 3])
    assert z.pairings == [0, 0, 0]
    with pytest.raises(ValueError):
        variation_continuity_probe(f, [3, 3])


def test_continuity_slow_decay():
    N = 400
    n = np.arange(-N, N + 1)
    c = np.where(n == 0, 0.0, np.abs(n + (n == 0)) ** -1.1)
    phase = np.exp(1j * np.sign(n) * np.sqrt(np.abs(n)))  # breaks any symmetry of the pair
    f = CircleFunction.stack([CircleFunction(c.astype(complex), real=True),
                              CircleFunction(c * phase, real=True)])
    flat = variation_continuity_probe(f, [8, 16, 32, 64, 128], X=sinx)
    assert max(map(abs, flat.pairings)) < 1e-12
    p = variation_continuity_probe(f, [1, 2, 4, 16, 128])
    assert len(p.rows()) == 5
    # increments are controlled by the H^1/2 tail with a moderate constant
    assert 0 < p.fitted_constant < 10
    # modes above the degree of the field never reach the pairing
    assert max(p.increments[1:]) <= 1e-12
