"""Fourier multipliers and evaluation of harmonic extensions into the disc."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import CircleFunction


@dataclass(frozen=True)
class DiskPoint:
    r: float
    theta: float

    def __post_init__(self):
        if not 0.0 <= self.r <= 1.0:
            raise ValueError(f"radius {self.r} outside [0, 1]")

    @property
    def z(self) -> complex:
        return self.r * np.exp(1j * self.theta)


def multiplier(f: CircleFunction, symbol, real_preserving: bool = True) -> CircleFunction:
    """Apply ``c[n] -> symbol(n) c[n]``.

    ``real_preserving`` asserts that ``symbol(-n) = conj(symbol(n))``.
    """
    m = np.asarray(symbol(f.freqs), dtype=complex)
    return CircleFunction(f.coeffs * m[:, None], real=f.real and real_preserving, _checked=True)


def fractional_laplacian(f: CircleFunction, s: float) -> CircleFunction:
    if not 0.0 < s <= 1.0:
        raise ValueError("s must lie in (0, 1]")
    return multiplier(f, lambda n: np.abs(n).astype(float) ** (2 * s))


def half_laplacian(f: CircleFunction) -> CircleFunction:
    return multiplier(f, lambda n: np.abs(n).astype(float))


def hilbert_transform(f: CircleFunction) -> CircleFunction:
    return multiplier(f, lambda n: -1j * np.sign(n))


def derivative(f: CircleFunction) -> CircleFunction:
    return multiplier(f, lambda n: 1j * n)


def freq_projection(f: CircleFunction, part: str) -> CircleFunction:
    if part == "positive":
        keep = f.freqs > 0
    elif part == "nonpositive":
        keep = f.freqs <= 0
    else:
        raise ValueError(f"part must be 'positive' or 'nonpositive', not {part!r}")
    return CircleFunction(f.coeffs * keep[:, None], real=False, _checked=True)


def radial_derivative_boundary(f: CircleFunction) -> CircleFunction:
    """Radial derivative at ``r = 1`` of the harmonic extension."""
    return half_laplacian(f)


def harmonic_extension_eval(f: CircleFunction, r, theta=None) -> np.ndarray:
    """``sum_n r^|n| e^{i n theta} c[n]``; broadcasts over ``r`` and ``theta``.

    ``r`` may also be a :class:`DiskPoint`.
    """
    if isinstance(r, DiskPoint):
        r, theta = r.r, r.theta
    r, theta = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
    if np.any(r > 1.0) or np.any(r < 0.0):
        raise ValueError("radius outside [0, 1]")
    n = f.freqs
    W = np.power.outer(r, np.abs(n)) * np.exp(1j * np.multiply.outer(theta, n))
    vals = W @ f.coeffs
    return vals.real if f.real else vals


def dz_extension_eval(f: CircleFunction, z) -> np.ndarray:
    """``d/dz`` of the harmonic extension: ``sum_{n>=1} n z^{n-1} c[n]``."""
    z = np.asarray(z, complex)
    if np.any(np.abs(z) > 1.0 + 1e-15):
        raise ValueError("point outside the closed disc")
    N = f.bandwidth
    if N == 0:
        return np.zeros(z.shape + (f.dim,), complex)
    pos = f.coeffs[N + 1:] * np.arange(1, N + 1)[:, None]
    # Horner in z over rows n = N..1
    acc = np.zeros(z.shape + (f.dim,), complex)
    for row in pos[::-1]:
        acc = acc * z[..., None] + row
    return acc
