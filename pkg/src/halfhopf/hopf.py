"""Hopf differential of the harmonic extension and its boundary counterpart.

For a band-limited ``u`` with coefficients ``c[n]`` the Hopf differential of
the extension is the polynomial ``H(z) = sum_{k>=2} h_k z^{k-2}`` with
``h_k = sum_{m+n=k, m,n>=1} m n c[m] . c[n]``.  The boundary distribution
``e^{-2i theta} (-Delta)^{1/2} u_+ . (-Delta)^{1/2} u_+`` has the same
coefficients shifted down by two.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .operators import derivative, dz_extension_eval, freq_projection, half_laplacian, hilbert_transform
from .spectral import CircleFunction, pointwise_dot
from .variation import inner_variation


@dataclass
class HopfReport:
    coeffs: np.ndarray          # h_k for k = 2 .. 2N
    disc_samples: list = field(default_factory=list)  # (r, theta, value)
    max_coeff: float = 0.0
    max_disc: float = 0.0

    @property
    def weighted(self) -> np.ndarray:
        k = np.arange(2, 2 + len(self.coeffs))
        return self.coeffs / k ** 2

    @property
    def max_weighted(self) -> float:
        return float(np.abs(self.weighted).max(initial=0.0))

    def coeff(self, k: int) -> complex:
        if 2 <= k < 2 + len(self.coeffs):
            return complex(self.coeffs[k - 2])
        return 0j

    def to_dict(self) -> dict:
        return {
            "coeffs": [[k, [float(c.real), float(c.imag)]]
                       for k, c in enumerate(self.coeffs, start=2)],
            "weighted_coeffs": [[k, [float(c.real), float(c.imag)]]
                                for k, c in enumerate(self.weighted, start=2)],
            "max_coeff": self.max_coeff,
            "max_weighted": self.max_weighted,
            "max_disc": self.max_disc,
            "disc_samples": len(self.disc_samples),
        }

    def write_disc_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "theta", "re", "im", "abs"])
            for r, t, v in self.disc_samples:
                w.writerow([repr(float(r)), repr(float(t)), repr(float(v.real)), repr(float(v.imag)), repr(float(abs(v)))])


def hopf_coefficients(f: CircleFunction) -> np.ndarray:
    """``h_k`` for ``k = 2..2N`` by direct convolution of ``n c[n]`` over ``n >= 1``."""
    N = f.bandwidth
    if N == 0:
        return np.zeros(0, complex)
    w = f.coeffs[N + 1:] * np.arange(1, N + 1)[:, None]
    return sum(np.convolve(w[:, j], w[:, j]) for j in range(f.dim))


def coefficients_as_function(h: np.ndarray) -> CircleFunction:
    """Place ``h_k`` at frequency ``k - 2``, the layout of the boundary form."""
    return CircleFunction.from_dict({k - 2: v for k, v in enumerate(h, start=2)}, real=False)


def hopf_differential_at(f: CircleFunction, z) -> np.ndarray:
    """``d_z u~ . d_z u~`` (bilinear dot) at points of the closed disc."""
    d = dz_extension_eval(f, z)
    return np.sum(d * d, axis=-1)


def disc_grid(n_r: int, n_theta: int, r_max: float = 0.95):
    """Radii ``r_max * j / (n_r - 1)`` (including the centre) times uniform angles."""
    if not 0.0 <= r_max <= 1.0:
        raise ValueError("r_max must lie in [0, 1]")
    radii = np.linspace(0.0, r_max, n_r) if n_r > 1 else np.array([r_max])
    thetas = 2 * np.pi * np.arange(n_theta) / n_theta
    R, T = np.meshgrid(radii, thetas, indexing="ij")
    return R.ravel(), T.ravel()


def fractional_hopf_coeffs(f: CircleFunction, grid=(16, 64), r_max: float = 0.95) -> HopfReport:
    h = hopf_coefficients(f)
    R, T = disc_grid(*grid, r_max=r_max) if grid else (np.zeros(0), np.zeros(0))
    vals = hopf_differential_at(f, R * np.exp(1j * T)) if R.size else np.zeros(0, complex)
    return HopfReport(
        coeffs=h,
        disc_samples=list(zip(R, T, vals)),
        max_coeff=float(np.abs(h).max(initial=0.0)),
        max_disc=float(np.abs(vals).max(initial=0.0)),
    )


def fractional_hopf_from_variation(f: CircleFunction) -> CircleFunction:
    """``e^{-2i theta} / (2i) * (V + i H(V))`` with ``V`` the inner variation."""
    V = inner_variation(f)
    return ((V + 1j * hilbert_transform(V)) * (1 / 2j)).shift(-2)


def fractional_hopf_positive(f: CircleFunction) -> CircleFunction:
    """``e^{-2i theta} (-Delta)^{1/2} u_+ . (-Delta)^{1/2} u_+``."""
    p = half_laplacian(freq_projection(f, "positive"))
    return pointwise_dot(p, p).shift(-2)


def conjugate_identity_sides(f: CircleFunction) -> tuple[CircleFunction, CircleFunction]:
    """``H(2 V(u))`` and ``|(-Delta)^{1/2} u|^2 - |u'|^2``."""
    lhs = hilbert_transform(2.0 * inner_variation(f))
    L = half_laplacian(f)
    D = derivative(f)
    rhs = pointwise_dot(L, L) - pointwise_dot(D, D)
    return lhs, rhs


def conformality_defect(f: CircleFunction, grid=(16, 64), r_max: float = 0.95) -> float:
    """Maximum of ``|H(u~)|`` over a polar grid of the disc."""
    R, T = disc_grid(*grid, r_max=r_max)
    return float(np.abs(hopf_differential_at(f, R * np.exp(1j * T))).max(initial=0.0))
