import csv

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from halfhopf import (CircleFunction, conformality_defect, fractional_hopf_coeffs,
                      fractional_hopf_from_variation, harmonic_extension_eval, hopf_differential_at,
                      random_trig)
from halfhopf.flows import blaschke_trace, scaling_family
from halfhopf.hopf import (coefficients_as_function, conjugate_identity_sides, fractional_hopf_positive,
                           hopf_coefficients)
from halfhopf.spectral import max_coeff_diff

from conftest import COS, COS2, SIN2, trig_polys, vec


def test_hopf_at_examples(circle, witness):
    z = np.array([0, 0.3 + 0.4j, -0.7j])
    assert np.allclose(hopf_differential_at(circle, z), 0, atol=1e-16)
    assert np.allclose(hopf_differential_at(vec(COS2, SIN2), z), 0, atol=1e-16)
    assert hopf_differential_at(witness, 0.0) == pytest.approx(0.25)


def test_coeff_examples(circle, witness):
    assert fractional_hopf_coeffs(circle).max_coeff == 0
    rep = fractional_hopf_coeffs(witness)
    assert rep.coeff(2) == pytest.approx(0.25)
    assert rep.coeff(3) == 0
    assert rep.coeff(4) == pytest.approx(-1.0)
    assert rep.max_coeff == pytest.approx(1.0)
    assert rep.coeff(1) == 0 and rep.coeff(0) == 0
    empty = fractional_hopf_coeffs(CircleFunction.constant([1.0, 0.0]))
    assert empty.coeffs.size == 0 and empty.max_coeff == 0


def test_from_variation_examples(circle):
    assert np.abs(fractional_hopf_from_variation(circle).coeffs).max() < 1e-16
    g = fractional_hopf_from_variation(CircleFunction.from_dict(COS))
    assert max_coeff_diff(g, CircleFunction.constant(0.25)) < 1e-16


@given(trig_polys(max_n=16))
def test_path_equivalence(f):
    ref = coefficients_as_function(hopf_coefficients(f))
    assert max_coeff_diff(fractional_hopf_from_variation(f), ref) <= 1e-12
    assert max_coeff_diff(fractional_hopf_positive(f), ref) <= 1e-12


@given(trig_polys(max_n=16))
def test_report_shape(f):
    rep = fractional_hopf_coeffs(f, grid=None)
    assert len(rep.coeffs) == max(2 * f.bandwidth - 1, 0)
    assert rep.disc_samples == []


@given(trig_polys(max_n=12), st.floats(0.05, 1.0))
def test_scaling_law(f, r):
    h, hr = hopf_coefficients(f), hopf_coefficients(scaling_family(f, r))
    k = np.arange(2, 2 + len(h))
    assert np.allclose(hr, r ** k * h, rtol=1e-13, atol=1e-15)


@given(trig_polys(max_n=16))
def test_conjugate_identity(f):
    lhs, rhs = conjugate_identity_sides(f)
    assert max_coeff_diff(lhs, rhs) <= 1e-12
    assert abs(rhs.coeff(0)[0]) <= 1e-12


@given(trig_polys(max_n=10), st.floats(0.1, 0.99))
def test_disc_bounded_by_coefficients(f, r_max):
    rep = fractional_hopf_coeffs(f, grid=(6, 24), r_max=r_max)
    k = np.arange(2, 2 + len(rep.coeffs))
    assert rep.max_disc <= rep.max_coeff * np.sum(r_max ** (k - 2)) * (1 + 1e-12) + 1e-15


def test_hopf_against_finite_differences(rng):
    # d/dz = (d/dx - i d/dy)/2 applied to the sampled extension
    f = random_trig(rng, 5, 3)
    h = 1e-5
    for z in (0.1 + 0.2j, -0.5j, 0.6):
        def U(w):
            return harmonic_extension_eval(f, abs(w), np.angle(w))
        dz = ((U(z + h) - U(z - h)) - 1j * (U(z + 1j * h) - U(z - 1j * h))) / (4 * h)
        assert hopf_differential_at(f, z) == pytest.approx(np.sum(dz * dz), abs=1e-7)


def test_conformality_examples(witness):
    b = blaschke_trace([0.3, -0.2 + 0.4j], N=64)
    assert conformality_defect(b) <= 1e-10
    assert conformality_defect(witness) >= 0.25
    assert conformality_defect(CircleFunction.constant([1.0, 1.0])) == 0


def test_disc_csv(tmp_path, witness):
    rep = fractional_hopf_coeffs(witness, grid=(3, 5))
    rep.write_disc_csv(tmp_path / "d.csv")
    rows = list(csv.reader(open(tmp_path / "d.csv")))
    assert rows[0] == ["r", "theta", "re", "im", "abs"] and len(rows) == 16
    assert float(rows[1][4]) == pytest.approx(0.25)
    assert rep.to_dict()["max_weighted"] == pytest.approx(1 / 16)
