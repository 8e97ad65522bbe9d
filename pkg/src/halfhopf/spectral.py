"""Truncated Fourier series on the circle.

A :class:`CircleFunction` stores the two-sided coefficients
``c[n] = (1/2pi) * int u(t) exp(-i n t) dt`` for ``n = -N..N`` of a
``k``-vector valued function.  Row ``n + N`` of ``coeffs`` holds ``c[n]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

TWO_PI = 2.0 * np.pi


class AliasingError(ValueError):
    """Samples carry energy above the requested bandwidth."""


class SchemaError(ValueError):
    """Malformed serialized CircleFunction."""


def _hermitian(c: np.ndarray) -> np.ndarray:
    """Project coefficients onto the conjugate-symmetric subspace."""
    return 0.5 * (c + np.conj(c[::-1]))


@dataclass(frozen=True, eq=False)
class CircleFunction:
    coeffs: np.ndarray
    real: bool = False
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim == 1:
            c = c[:, None]
        if c.ndim != 2 or c.shape[0] % 2 != 1 or c.shape[1] < 1:
            raise ValueError(f"coefficient array must have shape (2N+1, k), got {c.shape}")
        if self.real:
            if not self._checked:
                scale = max(float(np.abs(c).max(initial=0.0)), 1e-300)
                asym = float(np.abs(c - np.conj(c[::-1])).max(initial=0.0))
                if asym > 1e-12 * scale and asym > 1e-300:
                    raise ValueError(f"real flag set but coefficients are not conjugate-symmetric ({asym:.3e})")
            c = _hermitian(c)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "_checked", True)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, bandwidth: int, dim: int = 1, real: bool = True) -> "CircleFunction":
        return cls(np.zeros((2 * bandwidth + 1, dim), complex), real=real)

    @classmethod
    def constant(cls, value, bandwidth: int = 0) -> "CircleFunction":
        v = np.atleast_1d(np.asarray(value))
        c = np.zeros((2 * bandwidth + 1, v.size), complex)
        c[bandwidth] = v
        return cls(c, real=bool(np.isrealobj(v) or not np.any(np.imag(v))))

    @classmethod
    def from_dict(cls, modes: dict, dim: int = 1, real: bool | None = None) -> "CircleFunction":
        """Build from ``{n: coefficient}``; coefficients may be scalars or k-vectors."""
        N = max((abs(int(n)) for n in modes), default=0)
        c = np.zeros((2 * N + 1, dim), complex)
        for n, v in modes.items():
            c[int(n) + N] = v
        if real is None:
            real = bool(np.allclose(c, np.conj(c[::-1]), rtol=0, atol=1e-15))
        return cls(c, real=real)

    @classmethod
    def stack(cls, components: Iterable["CircleFunction"]) -> "CircleFunction":
        comps = list(components)
        N = max(f.bandwidth for f in comps)
        c = np.concatenate([f.pad(N).coeffs for f in comps], axis=1)
        return cls(c, real=all(f.real for f in comps))

    # -- shape --------------------------------------------------------------

    @property
    def bandwidth(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def dim(self) -> int:
        return self.coeffs.shape[1]

    @property
    def freqs(self) -> np.ndarray:
        N = self.bandwidth
        return np.arange(-N, N + 1)

    def coeff(self, n: int) -> np.ndarray:
        N = self.bandwidth
        if abs(n) > N:
            return np.zeros(self.dim, complex)
        return self.coeffs[n + N]

    def pad(self, N: int) -> "CircleFunction":
        M = self.bandwidth
        if N == M:
            return self
        if N < M:
            raise ValueError("pad cannot shrink; use truncate")
        c = np.zeros((2 * N + 1, self.dim), complex)
        c[N - M:N + M + 1] = self.coeffs
        return CircleFunction(c, real=self.real, _checked=True)

    def truncate(self, N: int) -> "CircleFunction":
        M = self.bandwidth
        if N >= M:
            return self.pad(N)
        return CircleFunction(self.coeffs[M - N:M + N + 1], real=self.real, _checked=True)

    def trimmed(self, tol: float = 0.0) -> "CircleFunction":
        """Drop outer coefficient rows whose magnitude is at most ``tol``."""
        mags = np.abs(self.coeffs).max(axis=1)
        nz = np.nonzero(mags > tol)[0]
        if nz.size == 0:
            return self.truncate(0)
        N = self.bandwidth
        return self.truncate(int(max(abs(nz[0] - N), abs(nz[-1] - N))))

    def component(self, j: int) -> "CircleFunction":
        return CircleFunction(self.coeffs[:, j:j + 1], real=self.real, _checked=True)

    def components(self) -> list["CircleFunction"]:
        return [self.component(j) for j in range(self.dim)]

    # -- algebra ------------------------------------------------------------

    def _binary(self, other: "CircleFunction", sign: float) -> "CircleFunction":
        if not isinstance(other, CircleFunction):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        N = max(self.bandwidth, other.bandwidth)
        c = self.pad(N).coeffs + sign * other.pad(N).coeffs
        return CircleFunction(c, real=self.real and other.real, _checked=True)

    def __add__(self, other):
        return self._binary(other, 1.0)

    def __sub__(self, other):
        return self._binary(other, -1.0)

    def __neg__(self):
        return CircleFunction(-self.coeffs, real=self.real, _checked=True)

    def __mul__(self, scalar):
        if isinstance(scalar, CircleFunction):
            return NotImplemented
        scalar = complex(scalar)
        real = self.real and scalar.imag == 0.0
        return CircleFunction(self.coeffs * (scalar.real if real else scalar), real=real, _checked=True)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def conj(self) -> "CircleFunction":
        return CircleFunction(np.conj(self.coeffs[::-1]), real=self.real, _checked=True)

    def shift(self, k: int) -> "CircleFunction":
        """Multiply by ``exp(i k theta)``."""
        N = self.bandwidth
        M = N + abs(k)
        c = np.zeros((2 * M + 1, self.dim), complex)
        c[M - N + k:M + N + k + 1] = self.coeffs
        return CircleFunction(c, real=self.real and k == 0, _checked=True)

    def allclose(self, other: "CircleFunction", atol: float = 1e-12) -> bool:
        return max_coeff_diff(self, other) <= atol

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, theta) -> np.ndarray:
        """Values at arbitrary angles, shape ``theta.shape + (dim,)``."""
        theta = np.asarray(theta, dtype=float)
        E = np.exp(1j * np.multiply.outer(theta, self.freqs))
        vals = E @ self.coeffs
        return vals.real if self.real else vals

    def integral(self) -> np.ndarray:
        return TWO_PI * self.coeff(0)

    def l2_norm(self) -> float:
        return float(np.sqrt(TWO_PI * np.sum(np.abs(self.coeffs) ** 2)))

    # -- serialization ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "bandwidth": self.bandwidth,
            "dim": self.dim,
            "real": bool(self.real),
            "coeffs": [
                [int(n), [[float(v.real), float(v.imag)] for v in row]]
                for n, row in zip(self.freqs, self.coeffs)
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)

    @classmethod
    def from_json_dict(cls, d) -> "CircleFunction":
        if not isinstance(d, dict):
            raise SchemaError("top level: expected an object")
        for key in ("bandwidth", "dim", "real", "coeffs"):
            if key not in d:
                raise SchemaError(f"missing field '{key}'")
        N, k = d["bandwidth"], d["dim"]
        if not isinstance(N, int) or isinstance(N, bool) or N < 0:
            raise SchemaError("field 'bandwidth': expected a nonnegative integer")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise SchemaError("field 'dim': expected a positive integer")
        if not isinstance(d["real"], bool):
            raise SchemaError("field 'real': expected a boolean")
        rows = d["coeffs"]
        if not isinstance(rows, list) or len(rows) != 2 * N + 1:
            raise SchemaError(f"field 'coeffs': expected {2 * N + 1} entries for n = -N..N")
        c = np.zeros((2 * N + 1, k), complex)
        for i, row in enumerate(rows):
            where = f"coeffs[{i}]"
            if not (isinstance(row, list) and len(row) == 2):
                raise SchemaError(f"{where}: expected [n, [[re, im], ...]]")
            n, vec = row
            if n != i - N:
                raise SchemaError(f"{where}: expected frequency {i - N}, got {n!r}")
            if not (isinstance(vec, list) and len(vec) == k):
                raise SchemaError(f"{where}: expected {k} components")
            for j, z in enumerate(vec):
                if not (isinstance(z, list) and len(z) == 2
                        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)):
                    raise SchemaError(f"{where}[1][{j}]: expected [re, im] numbers")
                c[i, j] = complex(z[0], z[1])
        if not np.all(np.isfinite(c)):
            raise SchemaError("field 'coeffs': non-finite value")
        try:
            return cls(c, real=d["real"])
        except ValueError as exc:
            raise SchemaError(f"field 'real': {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "CircleFunction":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        return cls.from_json_dict(d)


def grid(M: int) -> np.ndarray:
    return TWO_PI * np.arange(M) / M


def _fit(samples, N: int):
    """Coefficients for bandwidth ``N`` plus the discarded coefficient mass."""
    s = np.asarray(samples)
    if s.ndim == 1:
        s = s[:, None]
    M = s.shape[0]
    if M < 2 * N + 1:
        raise AliasingError(f"{M} samples cannot resolve bandwidth {N} (need at least {2 * N + 1})")
    real = np.isrealobj(s) or not np.any(s.imag)
    if real:
        s = np.real(s)
    F = np.fft.fft(s, axis=0) / M
    kept = np.concatenate([F[M - N:], F[:N + 1]]) if N > 0 else F[:1]
    total = float(np.sqrt(np.sum(np.abs(F) ** 2)))
    tail = float(np.sqrt(np.sum(np.abs(F[N + 1:M - N]) ** 2)))
    if real:
        kept = _hermitian(kept)
    return CircleFunction(kept, real=real, _checked=True), tail, total


def from_samples(samples, bandwidth: int, tol: float = 1e-10) -> CircleFunction:
    """Discrete Fourier coefficients of samples at ``theta_j = 2 pi j / M``.

    Raises :class:`AliasingError` if ``M < 2N+1`` or if more than ``tol``
    (relative) of the coefficient mass falls outside ``[-N, N]``.
    """
    f, tail, total = _fit(samples, bandwidth)
    if tail > tol * max(total, 1.0):
        raise AliasingError(f"samples carry mass {tail:.3e} above bandwidth {bandwidth}")
    return f


def fit_samples(samples, bandwidth: int) -> tuple[CircleFunction, float]:
    """Like :func:`from_samples` but truncates silently and returns the relative tail."""
    f, tail, total = _fit(samples, bandwidth)
    return f, tail / total if total > 0 else 0.0


def to_samples(f: CircleFunction, M: int) -> np.ndarray:
    """Values at ``M`` uniform angles, shape ``(M, dim)``."""
    if M < 1:
        raise ValueError("M must be positive")
    folded = np.zeros((M, f.dim), complex)
    np.add.at(folded, f.freqs % M, f.coeffs)
    vals = np.fft.ifft(folded, axis=0) * M
    return vals.real if f.real else vals


def pointwise_dot(f: CircleFunction, g: CircleFunction) -> CircleFunction:
    """Exact coefficients of ``sum_j f_j g_j`` (no complex conjugation)."""
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} vs {g.dim}")
    c = sum(np.convolve(f.coeffs[:, j], g.coeffs[:, j]) for j in range(f.dim))
    return CircleFunction(c, real=f.real and g.real, _checked=True)


def times(f: CircleFunction, g: CircleFunction) -> CircleFunction:
    """Exact product of a vector function ``f`` with a scalar function ``g``."""
    if g.dim != 1:
        raise ValueError("second factor must be scalar")
    c = np.stack([np.convolve(f.coeffs[:, j], g.coeffs[:, 0]) for j in range(f.dim)], axis=1)
    return CircleFunction(c, real=f.real and g.real, _checked=True)


def parseval_sum(f: CircleFunction) -> float:
    """``sum_n |c[n]|^2``, equal to the mean of ``|u|^2``."""
    return float(np.sum(np.abs(f.coeffs) ** 2))


def max_coeff_diff(f: CircleFunction, g: CircleFunction) -> float:
    N = max(f.bandwidth, g.bandwidth)
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    return float(np.abs(f.pad(N).coeffs - g.pad(N).coeffs).max(initial=0.0))


def random_trig(rng: np.random.Generator, bandwidth: int, dim: int = 1,
                decay: float = 1.5, real: bool = True) -> CircleFunction:
    """Gaussian coefficients with ``|c[n]|`` proportional to ``(1+|n|)^-decay``."""
    N = bandwidth
    n = np.arange(-N, N + 1)
    scale = (1.0 + np.abs(n))[:, None] ** (-decay)
    c = (rng.standard_normal((2 * N + 1, dim)) + 1j * rng.standard_normal((2 * N + 1, dim))) * scale
    if real:
        c = _hermitian(c)
    return CircleFunction(c, real=real, _checked=True)
