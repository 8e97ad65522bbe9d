"""Half Dirichlet energy, Sobolev norms and the Wiener norm."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import TWO_PI, CircleFunction, grid, to_samples


@dataclass
class NormReport:
    energy_spectral: float
    energy_gagliardo: float
    wiener: float
    sobolev: list = field(default_factory=list)  # [(s, inhomogeneous, homogeneous)]
    quadrature_points: int = 0

    def to_dict(self) -> dict:
        return {
            "energy_spectral": self.energy_spectral,
            "energy_gagliardo": self.energy_gagliardo,
            "quadrature_points": self.quadrature_points,
            "wiener": self.wiener,
            "sobolev": [[s, a, b] for s, a, b in self.sobolev],
        }


def energy_spectral(f: CircleFunction) -> float:
    """``int |(-Delta)^{1/4} u|^2 = 2 pi sum |n| |c[n]|^2``."""
    w = np.abs(f.freqs)[:, None]
    return float(TWO_PI * np.sum(w * np.abs(f.coeffs) ** 2))


def energy_gagliardo(f: CircleFunction, M: int, block: int = 256) -> float:
    """``(1/2pi) iint |u(x)-u(y)|^2 / |e^{ix}-e^{iy}|^2`` by product trapezoid.

    ``x`` runs over the uniform ``M`` grid and ``y`` over the same grid shifted
    by half a cell, so the diagonal is never sampled.
    """
    if M < max(4 * f.bandwidth, 1):
        raise ValueError(f"quadrature resolution {M} below 4 * bandwidth")
    x = grid(M)
    y = x + np.pi / M
    ux = to_samples(f, M)
    uy = f.evaluate(y)
    total = 0.0
    for i0 in range(0, M, block):
        xi = x[i0:i0 + block]
        diff = ux[i0:i0 + block, None, :] - uy[None, :, :]
        num = np.sum(np.abs(diff) ** 2, axis=-1)
        den = 4.0 * np.sin(0.5 * (xi[:, None] - y[None, :])) ** 2
        total += float(np.sum(num / den))
    h = TWO_PI / M
    return total * h * h / TWO_PI


def sobolev_norm(f: CircleFunction, s: float) -> tuple[float, float]:
    """``(sum (1+n^2)^s |c|^2)^{1/2}`` and ``(sum_{n!=0} |n|^{2s} |c|^2)^{1/2}``."""
    n = f.freqs.astype(float)
    mag2 = np.sum(np.abs(f.coeffs) ** 2, axis=1)
    inhom = np.sqrt(np.sum((1.0 + n * n) ** s * mag2))
    nz = n != 0
    hom = np.sqrt(np.sum(np.abs(n[nz]) ** (2 * s) * mag2[nz]))
    return float(inhom), float(hom)


def sobolev_seminorm(f: CircleFunction, s: float) -> float:
    return sobolev_norm(f, s)[1]


def wiener_norm(f: CircleFunction) -> float:
    """``sum_n |c[n]|`` with the Euclidean norm of each vector coefficient."""
    return float(np.sum(np.linalg.norm(f.coeffs, axis=1)))


def h1_norm_sq(f: CircleFunction) -> float:
    """``int |u|^2 + |u'|^2``."""
    n = f.freqs.astype(float)[:, None]
    return float(TWO_PI * np.sum((1.0 + n * n) * np.abs(f.coeffs) ** 2))


def norm_report(f: CircleFunction, M: int | None = None,
                sobolev_orders=(-0.5, 0.0, 0.5, 1.0)) -> NormReport:
    if M is None:
        M = 8 * (2 * f.bandwidth + 1)
    return NormReport(
        energy_spectral=energy_spectral(f),
        energy_gagliardo=energy_gagliardo(f, M),
        wiener=wiener_norm(f),
        sobolev=[(s, *sobolev_norm(f, s)) for s in sobolev_orders],
        quadrature_points=M,
    )
