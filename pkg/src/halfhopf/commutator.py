"""The bilinear operator D_s, commutators with (-Delta)^s, and estimate probes."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import sobolev_norm, wiener_norm
from .operators import derivative, fractional_laplacian
from .spectral import TWO_PI, CircleFunction, pointwise_dot, to_samples


@dataclass(frozen=True)
class EstimateProbe:
    s: float
    lhs: float
    rhs_bound: float
    ratio: float
    constant_cap: float
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.ratio <= self.constant_cap

    def csv_row(self) -> list:
        return [self.s, self.lhs, self.rhs_bound, self.ratio, self.constant_cap,
                "" if self.seed is None else self.seed]


CSV_HEADER = ["s", "lhs", "rhs", "ratio", "cap", "seed"]


def _ratio(lhs: float, rhs: float) -> float:
    if rhs > 0.0:
        return lhs / rhs
    # a positive left side against a vanishing bound is a violation
    return math.inf if lhs > 1e-14 else 0.0


def d_s(a: CircleFunction, b: CircleFunction, s: float) -> CircleFunction:
    """``(-Delta)^s a . b - (-Delta)^s b . a`` (dot product over components)."""
    return (pointwise_dot(fractional_laplacian(a, s), b)
            - pointwise_dot(fractional_laplacian(b, s), a))


def pair(f: CircleFunction, g: CircleFunction) -> complex:
    """``int f g`` for scalar functions (bilinear, no conjugation)."""
    N = min(f.bandwidth, g.bandwidth)
    fc = f.truncate(N).coeffs[:, 0]
    gc = g.truncate(N).coeffs[::-1, 0]
    return complex(TWO_PI * np.sum(fc * gc))


def commutator_apply(a: CircleFunction, phi: CircleFunction, s: float) -> CircleFunction:
    """``[(-Delta)^s, a] phi = (-Delta)^s (a phi) - a (-Delta)^s phi``."""
    if a.dim != 1 or phi.dim != 1:
        raise ValueError("commutator_apply expects scalar functions")
    return (fractional_laplacian(pointwise_dot(a, phi), s)
            - pointwise_dot(a, fractional_laplacian(phi, s)))


def commutator_coeffs(a: CircleFunction, phi: CircleFunction, s: float) -> CircleFunction:
    """``sum_k (|n|^{2s} - |n-k|^{2s}) phi[k] a[n-k]`` by direct double sum.

    This is ``(-Delta)^s (a phi) - phi (-Delta)^s a``, the commutator of
    ``(-Delta)^s`` with multiplication by ``phi``, applied to ``a``.
    """
    Na, Np = a.bandwidth, phi.bandwidth
    N = Na + Np
    out = np.zeros(2 * N + 1, complex)
    for k in range(-Np, Np + 1):
        pk = phi.coeff(k)[0]
        if pk == 0:
            continue
        for j in range(-Na, Na + 1):
            n = j + k
            out[n + N] += (abs(n) ** (2 * s) - abs(j) ** (2 * s)) * pk * a.coeff(j)[0]
    return CircleFunction(out, real=a.real and phi.real)


def lemma_a2_cap(s: float) -> float:
    """``2 pi 3^{1-2s} sqrt(1+s^2)``, the closed-form envelope for the commutator probe."""
    return TWO_PI * 3.0 ** (1 - 2 * s) * math.sqrt(1 + s * s)


# two pieces of the split, sqrt(3/2) and sqrt(4), added by the triangle inequality
LEMMA_A3_CAP = TWO_PI * (math.sqrt(1.5) + 2.0)


def probe_lemma_A2(a: CircleFunction, phi: CircleFunction, s: float,
                   seed: int | None = None) -> EstimateProbe:
    """Commutator of ``(-Delta)^s`` with the smooth factor ``phi``, applied to ``a``.

    ``lhs = ||(-Delta)^s (a phi) - phi (-Delta)^s a||_{L^2}`` and
    ``rhs = ||phi'||_A ||a||_{H^{2s-1}}`` (inhomogeneous norm, so that the
    mean of ``a`` is accounted for).
    """
    if not 0.0 < s < 0.5:
        raise ValueError("s must lie in (0, 1/2)")
    lhs = commutator_apply(phi, a, s).l2_norm()
    rhs = wiener_norm(derivative(phi)) * sobolev_norm(a, 2 * s - 1)[0]
    return EstimateProbe(s, lhs, rhs, _ratio(lhs, rhs), lemma_a2_cap(s), seed)


def probe_lemma_A3(a: CircleFunction, b: CircleFunction, phi: CircleFunction,
                   seed: int | None = None) -> EstimateProbe:
    """``|int D_{1/2}(a,b) phi|`` against ``||(-Delta)^{3/4} phi||_A ||a||_{H^-1/2} ||b||_{H^1/2}``."""
    lhs = abs(pair(d_s(a, b, 0.5), phi))
    rhs = (wiener_norm(fractional_laplacian(phi, 0.75))
           * sobolev_norm(a, -0.5)[0] * sobolev_norm(b, 0.5)[0])
    return EstimateProbe(0.5, lhs, rhs, _ratio(lhs, rhs), LEMMA_A3_CAP, seed)


def kernel_coeffs(s: float, N: int) -> CircleFunction:
    """Band-limited kernel with ``K[0] = 0`` and ``K[n] = -|n|^{2s} / (2 pi)``.

    ``int (phi(x) - phi(y)) K(x - y) dy`` reproduces ``(-Delta)^s phi`` exactly
    for trigonometric polynomials of degree at most ``N``.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    n = np.arange(-N, N + 1)
    c = -np.abs(n).astype(float) ** (2 * s) / TWO_PI
    return CircleFunction(c.astype(complex), real=True)


def kernel_apply(phi: CircleFunction, s: float, M: int | None = None) -> CircleFunction:
    """``(-Delta)^s phi`` through the kernel integral, by trapezoid quadrature in ``y``."""
    if phi.dim != 1:
        raise ValueError("scalar input expected")
    N = max(phi.bandwidth, 1)
    if M is None:
        M = 2 * N + 1
    if M < 2 * N + 1:
        raise ValueError(f"quadrature resolution {M} below {2 * N + 1}")
    K = to_samples(kernel_coeffs(s, N), M)[:, 0]
    p = to_samples(phi, M)[:, 0]
    idx = np.arange(M)
    Kxy = K[(idx[:, None] - idx[None, :]) % M]
    vals = (TWO_PI / M) * np.sum((p[:, None] - p[None, :]) * Kxy, axis=1)
    c = np.fft.fft(vals) / M
    out = np.concatenate([c[M - phi.bandwidth:], c[:phi.bandwidth + 1]]) if phi.bandwidth else c[:1]
    return CircleFunction(out, real=phi.real)


def fractional_divergence_pairing(a: CircleFunction, b: CircleFunction, phi: CircleFunction,
                                  s: float, M: int | None = None) -> float:
    """``iint a(x) b(y) (phi(x) - phi(y)) K^s(x - y) dx dy`` by exact quadrature.

    The kernel is the band-limited surrogate at degree ``N_a + N_b + N_phi``,
    which makes the trapezoid rule exact; the value equals ``int D_s(a, b) phi``.
    """
    for g in (a, b, phi):
        if g.dim != 1:
            raise ValueError("scalar inputs expected")
    NK = max(a.bandwidth + b.bandwidth + phi.bandwidth, 1)
    if M is None:
        M = 2 * NK + 1
    if M < 2 * NK + 1:
        raise ValueError(f"quadrature resolution {M} below {2 * NK + 1}")
    A, B, P = (to_samples(g, M)[:, 0] for g in (a, b, phi))
    K = to_samples(kernel_coeffs(s, NK), M)[:, 0]
    idx = np.arange(M)
    Kxy = K[(idx[:, None] - idx[None, :]) % M]
    h = TWO_PI / M
    val = h * h * np.sum(A[:, None] * B[None, :] * (P[:, None] - P[None, :]) * Kxy)
    if a.real and b.real and phi.real:
        return float(np.real(val))
    return complex(val)


def d_s_pairing(a: CircleFunction, b: CircleFunction, phi: CircleFunction, s: float):
    """``int D_s(a, b) phi`` from coefficients."""
    v = pair(d_s(a, b, s), phi)
    return v.real if (a.real and b.real and phi.real) else v
