"""Disc automorphisms ``z -> mu (z - a) / (conj(a) z - 1)`` and their boundary traces."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import half_laplacian
from .spectral import CircleFunction, fit_samples, grid


class TruncationError(ValueError):
    """Composition needs more output bandwidth than requested."""


@dataclass(frozen=True)
class MobiusMap:
    a: complex = 0j
    mu: complex = 1 + 0j

    def __post_init__(self):
        a, mu = complex(self.a), complex(self.mu)
        if not abs(a) < 1 - 1e-12:
            raise ValueError(f"|a| = {abs(a)} must be below 1")
        if abs(abs(mu) - 1) > 1e-12:
            raise ValueError(f"|mu| = {abs(mu)} must equal 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "mu", mu)

    @classmethod
    def rotation(cls, alpha: float) -> "MobiusMap":
        """The map ``z -> e^{i alpha} z``."""
        return cls(0j, -np.exp(1j * alpha))

    def __call__(self, z):
        z = np.asarray(z, complex)
        return self.mu * (z - self.a) / (np.conj(self.a) * z - 1)

    def matrix(self) -> np.ndarray:
        return np.array([[self.mu, -self.mu * self.a], [np.conj(self.a), -1]])

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "MobiusMap":
        m = m / -m[1, 1]
        mu = m[0, 0]
        return cls(-m[0, 1] / mu, mu / abs(mu))

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """``(self @ other)(z) = self(other(z))``."""
        return MobiusMap.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.mu * self.a, np.conj(self.mu))

    def to_dict(self) -> dict:
        return {"a": [self.a.real, self.a.imag], "mu": [self.mu.real, self.mu.imag]}

    @classmethod
    def from_dict(cls, d: dict) -> "MobiusMap":
        return cls(complex(*d["a"]), complex(*d["mu"]))


def boundary_trace(m: MobiusMap, theta):
    """Continuous lift of ``arg m(e^{i theta})``.

    With ``w = 1 - a e^{-i theta}`` (which has positive real part),
    ``m(e^{i theta}) = -mu e^{i theta} w / conj(w)``.
    """
    theta = np.asarray(theta, float)
    w = 1 - m.a * np.exp(-1j * theta)
    return theta + np.pi + np.angle(m.mu) + 2 * np.arctan2(w.imag, w.real)


def trace_jacobian(m: MobiusMap, theta):
    """``(1 - |a|^2) / |conj(a) e^{i theta} - 1|^2``."""
    theta = np.asarray(theta, float)
    return (1 - abs(m.a) ** 2) / np.abs(np.conj(m.a) * np.exp(1j * theta) - 1) ** 2


def _resample(values_at, N_out: int, oversample: int, max_tail: float):
    M = oversample * (2 * N_out + 1)
    g, tail = fit_samples(values_at(grid(M)), N_out)
    if tail > max_tail:
        raise TruncationError(f"discarded tail {tail:.2e} above {max_tail:.0e}; raise N_out")
    return g, tail


def compose(f: CircleFunction, m: MobiusMap, oversample: int = 8, N_out: int | None = None,
            max_tail: float = 1e-3, return_tail: bool = False):
    """``u o phi`` with ``phi`` the boundary trace of ``m``, truncated to ``N_out``."""
    if oversample < 4:
        raise ValueError("oversample must be at least 4")
    if N_out is None:
        N_out = 8 * max(f.bandwidth, 1)
    g, tail = _resample(lambda t: f.evaluate(boundary_trace(m, t)), N_out, oversample, max_tail)
    return (g, tail) if return_tail else g


def naturality_defect(f: CircleFunction, m: MobiusMap, N_out: int | None = None,
                      oversample: int = 8, max_tail: float = 1e-3) -> float:
    """``|| (-Delta)^{1/2}(u o phi) - |phi'| ((-Delta)^{1/2} u) o phi ||_{L^2}``."""
    if N_out is None:
        N_out = 8 * max(f.bandwidth, 1)
    lhs = half_laplacian(compose(f, m, oversample, N_out, max_tail))
    Lf = half_laplacian(f)

    def rhs_values(t):
        return trace_jacobian(m, t)[:, None] * Lf.evaluate(boundary_trace(m, t))

    # same projection as the left side, so its tail is not guarded separately
    rhs, _ = _resample(rhs_values, N_out, oversample, np.inf)
    return (lhs - rhs).l2_norm()


def dilation_field(delta: float) -> CircleFunction:
    """``2 sin(delta - x) = 2 sin(delta) cos x - 2 cos(delta) sin x``."""
    return CircleFunction.from_dict({1: 1j * np.exp(-1j * delta), -1: -1j * np.exp(1j * delta)}, real=True)
