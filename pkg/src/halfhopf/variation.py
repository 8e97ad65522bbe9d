"""First inner variation of the half Dirichlet energy and the identities built on it."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .commutator import d_s, pair
from .energy import energy_spectral, wiener_norm
from .operators import derivative, half_laplacian
from .spectral import CircleFunction, fit_samples, grid, pointwise_dot, times


class FlowIntegrationError(RuntimeError):
    pass


def inner_variation(f: CircleFunction) -> CircleFunction:
    """``(-Delta)^{1/2} u . u'`` as an exact trigonometric polynomial."""
    return pointwise_dot(half_laplacian(f), derivative(f))


def pair_with_field(v: CircleFunction, X: CircleFunction) -> float | complex:
    """``int v X = 2 pi sum v[n] X[-n]``."""
    if v.dim != 1 or X.dim != 1:
        raise ValueError("pair_with_field expects scalar functions")
    val = pair(v, X)
    return val.real if (v.real and X.real) else val


def flow_map(X: CircleFunction, theta: np.ndarray, t: float, substeps: int = 8) -> np.ndarray:
    """Integrate ``x' = X(x)`` from ``theta`` for time ``t`` with classical RK4."""
    if X.dim != 1 or not X.real:
        raise ValueError("vector field must be a real scalar function")
    x = np.array(theta, dtype=float)
    dt = t / substeps

    def vel(y):
        return X.evaluate(y)[..., 0]

    for _ in range(substeps):
        k1 = vel(x)
        k2 = vel(x + 0.5 * dt * k1)
        k3 = vel(x + 0.5 * dt * k2)
        k4 = vel(x + dt * k3)
        x = x + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return x


def compose_flow(f: CircleFunction, X: CircleFunction, t: float, *, bandwidth: int | None = None,
                 oversample: int = 8, max_tail: float = 1e-9) -> CircleFunction:
    """``u o phi_t`` resampled at ``bandwidth`` (default ``8 N``)."""
    N_out = bandwidth if bandwidth is not None else 8 * max(f.bandwidth, 1)
    M = oversample * (2 * N_out + 1)
    phi = flow_map(X, grid(M), t)
    g, tail = fit_samples(f.evaluate(phi), N_out)
    if tail > max_tail:
        raise FlowIntegrationError(f"resampling tail {tail:.2e} exceeds {max_tail:.0e}; step too large")
    return g


def directional_energy_derivative(f: CircleFunction, X: CircleFunction, h: float, **kw) -> float:
    """Central difference of ``t -> E(u o phi_t)`` at ``t = 0``.

    Independent of the spectral formula: it only composes ``u`` with the
    numerically integrated flow and evaluates the energy.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    ep = energy_spectral(compose_flow(f, X, h, **kw))
    em = energy_spectral(compose_flow(f, X, -h, **kw))
    return (ep - em) / (2 * h)


def first_moments(f: CircleFunction) -> tuple[np.ndarray, np.ndarray]:
    """``int u cos`` and ``int u sin`` from the coefficients at ``n = +-1``."""
    c1, cm1 = f.coeff(1), f.coeff(-1)
    C = np.pi * (c1 + cm1)
    S = 1j * np.pi * (c1 - cm1)
    if f.real:
        C, S = C.real, S.real
    return C, S


def balancing_defect(f: CircleFunction) -> tuple[float, float]:
    """``| |C|^2 - |S|^2 |`` and ``|C . S|`` for the first moments ``C, S``."""
    if not f.real:
        raise ValueError("balancing defect is defined for real-valued maps")
    C, S = first_moments(f)
    return float(abs(C @ C - S @ S)), float(abs(C @ S))


def sine_field(delta: float) -> CircleFunction:
    """``sin(delta - x)``."""
    return CircleFunction.from_dict({1: -np.exp(-1j * delta) / 2j, -1: np.exp(1j * delta) / 2j}, real=True)


def pohozaev_residual(f: CircleFunction, delta: float) -> float:
    """``int u' . (-Delta)^{1/2} u sin(delta - x) dx``."""
    return float(np.real(pair(inner_variation(f), sine_field(delta))))


def rotation_pohozaev(f: CircleFunction) -> float:
    """``int u' . (-Delta)^{1/2} u dx``."""
    return float(np.real(inner_variation(f).integral()[0]))


def is_conformal_field(X: CircleFunction, tol: float = 0.0) -> bool:
    """Whether ``X`` lies in ``span{1, cos x, sin x}``."""
    return X.trimmed(tol).bandwidth <= 1


def conservation_residual(f: CircleFunction, X: CircleFunction) -> CircleFunction:
    """``d/dx((-Delta)^{1/2} u . u X) - D_{1/2}(u' X, u)``; vanishes at stationary points."""
    flux = times(pointwise_dot(half_laplacian(f), f), X)
    return derivative(flux) - d_s(times(derivative(f), X), f, 0.5)


def noether_residual(f: CircleFunction, X: CircleFunction, conformal: bool | None = None) -> CircleFunction:
    """``d/dx(...) - D_{1/2}(u' X, u) - 2 V(u) X``.

    Vanishes identically for every ``u`` when ``X`` generates disc automorphisms.
    Passing ``conformal=True`` with a field outside that span is an error.
    """
    if conformal and not is_conformal_field(X, 1e-14):
        raise ValueError("field is not in the span of 1, cos x, sin x")
    return conservation_residual(f, X) - 2.0 * times(inner_variation(f), X)


@dataclass
class ContinuityProbe:
    truncations: list
    pairings: list
    tails: list
    increments: list
    fitted_constant: float

    def rows(self) -> list:
        return [[N, a, t] for N, a, t in zip(self.truncations, self.pairings, self.tails)]


def h12_tail(f: CircleFunction, N: int) -> float:
    """``(sum_{|n|>N} |n| |c[n]|^2)^{1/2}``."""
    n = np.abs(f.freqs)
    mask = n > N
    return float(np.sqrt(np.sum(n[mask, None] * np.abs(f.coeffs[mask]) ** 2)))


def variation_continuity_probe(f: CircleFunction, truncations, X: CircleFunction | None = None) -> ContinuityProbe:
    """``<V(u_N), X>`` along increasing truncations ``u_N`` of ``f``.

    The fitted constant is ``max |a_{j+1} - a_j| / (||X'||_A ||u||_{H^1/2} tail(N_j))``.
    The default field is ``sin 2x``: against ``sin x`` the pairing vanishes
    for every ``u``, which would make the probe vacuous.
    """
    Ns = [int(N) for N in truncations]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("truncations must be increasing")
    if X is None:
        X = CircleFunction.from_dict({2: 1 / 2j, -2: -1 / 2j}, real=True)
    vals = [pair_with_field(inner_variation(f.truncate(N)), X) for N in Ns]
    tails = [h12_tail(f, N) for N in Ns]
    incs = [abs(b - a) for a, b in zip(vals, vals[1:])]
    scale = wiener_norm(derivative(X)) * np.sqrt(energy_spectral(f) + 1e-300)
    ratios = [d / (scale * t) for d, t in zip(incs, tails) if t > 0]
    return ContinuityProbe(Ns, vals, tails, incs, max(ratios, default=0.0))


@dataclass
class ResidualReport:
    stationarity: float
    stationarity_weighted: float
    variation_l2: float
    balancing_real: float
    balancing_imag: float
    rotation_pohozaev: float
    pohozaev: list = field(default_factory=list)
    noether: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "stationarity": self.stationarity,
            "stationarity_weighted": self.stationarity_weighted,
            "variation_l2": self.variation_l2,
            "balancing": [self.balancing_real, self.balancing_imag],
            "rotation_pohozaev": self.rotation_pohozaev,
            "pohozaev": [[d, v] for d, v in self.pohozaev],
            "noether": [[name, v] for name, v in self.noether],
        }
