"""Assemble the residual, norm and Hopf reports for a single map."""
from __future__ import annotations

import numpy as np

from .energy import NormReport, norm_report
from .hopf import HopfReport, fractional_hopf_coeffs
from .mobius import dilation_field
from .spectral import CircleFunction
from .variation import (ResidualReport, balancing_defect, conservation_residual, inner_variation,
                        pohozaev_residual, rotation_pohozaev)

DEFAULT_DELTAS = tuple(2 * np.pi * j / 8 for j in range(8))


def residual_report(f: CircleFunction, deltas=DEFAULT_DELTAS, hopf: HopfReport | None = None) -> ResidualReport:
    if hopf is None:
        hopf = fractional_hopf_coeffs(f, grid=None)
    if f.real:
        bal = balancing_defect(f)
    else:
        bal = (None, None)  # undefined for complex maps
    noether = [("1", conservation_residual(f, CircleFunction.constant(1.0)).l2_norm())]
    for d in deltas:
        noether.append((f"2sin({float(d):.6g}-x)", conservation_residual(f, dilation_field(d)).l2_norm()))
    return ResidualReport(
        stationarity=hopf.max_coeff,
        stationarity_weighted=hopf.max_weighted,
        variation_l2=inner_variation(f).l2_norm(),
        balancing_real=bal[0],
        balancing_imag=bal[1],
        rotation_pohozaev=rotation_pohozaev(f),
        pohozaev=[(float(d), pohozaev_residual(f, d)) for d in deltas],
        noether=noether,
    )


def analyze(f: CircleFunction, grid=(16, 64), r_max: float = 0.95,
            quadrature: int | None = None) -> tuple[ResidualReport, NormReport, HopfReport]:
    hopf = fractional_hopf_coeffs(f, grid=grid, r_max=r_max)
    return residual_report(f, hopf=hopf), norm_report(f, quadrature), hopf


def has_nan(obj) -> bool:
    """Whether a nested report structure holds a NaN anywhere."""
    if isinstance(obj, float):
        return obj != obj
    if isinstance(obj, dict):
        return any(has_nan(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(has_nan(v) for v in obj)
    return False
