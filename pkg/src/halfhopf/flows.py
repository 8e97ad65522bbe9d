"""Stationary fixtures and a projected gradient flow for sphere-valued maps."""
from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field

import numpy as np

from .energy import energy_spectral
from .hopf import hopf_coefficients
from .operators import half_laplacian, multiplier
from .spectral import TWO_PI, CircleFunction, fit_samples, grid, to_samples

log = logging.getLogger(__name__)


class FlowError(RuntimeError):
    pass


class ProjectionError(FlowError, ValueError):
    pass


def blaschke_product(zeros, mu: complex = 1.0):
    """``z -> mu prod_j (z - a_j) / (1 - conj(a_j) z)``."""
    zeros = [complex(a) for a in zeros]
    for a in zeros:
        if abs(a) >= 1:
            raise ValueError(f"zero {a} outside the open disc")

    def B(z):
        z = np.asarray(z, complex)
        out = np.full(z.shape, complex(mu))
        for a in zeros:
            out = out * (z - a) / (1 - np.conj(a) * z)
        return out

    return B


def blaschke_trace(zeros, mu: complex = 1.0, N: int = 64, as_complex: bool = False,
                   tol: float = 1e-14) -> CircleFunction:
    """Boundary values of a finite Blaschke product, as a map into the unit circle of R^2.

    ``as_complex`` returns the complex scalar trace instead.  Raises if the
    coefficient mass beyond ``N`` exceeds ``tol`` (relative).
    """
    if abs(abs(mu) - 1) > 1e-12:
        raise ValueError("mu must have modulus one")
    B = blaschke_product(zeros, mu)
    M = 4 * (2 * N + 1)
    vals = B(np.exp(1j * grid(M)))
    samples = vals[:, None] if as_complex else np.stack([vals.real, vals.imag], axis=1)
    f, tail = fit_samples(samples, N)
    if tail > tol:
        raise ValueError(f"bandwidth {N} too small: relative tail {tail:.2e}")
    return f


def scaling_family(f: CircleFunction, r: float) -> CircleFunction:
    """``c[n] -> r^|n| c[n]``, the trace of the extension on the circle of radius ``r``."""
    if not 0.0 < r <= 1.0:
        raise ValueError("r must lie in (0, 1]")
    return multiplier(f, lambda n: float(r) ** np.abs(n))


def sphere_project(f: CircleFunction, oversample: int = 8, bandwidth: int | None = None,
                   min_norm: float = 1e-8, return_tail: bool = False):
    """Pointwise normalization onto the unit sphere, refitted at ``bandwidth``."""
    N = f.bandwidth if bandwidth is None else bandwidth
    M = oversample * (2 * max(N, f.bandwidth) + 1)
    U = to_samples(f, M)
    nrm = np.linalg.norm(U, axis=1)
    if nrm.min() < min_norm:
        raise ProjectionError(f"|u| = {nrm.min():.2e} on the sampling grid; projection undefined")
    g, tail = fit_samples(U / nrm[:, None], N)
    return (g, tail) if return_tail else g


@dataclass
class FlowConfig:
    step: float = 1.0 / 64
    max_iter: int = 50_000
    tol: float = 1e-6
    oversample: int = 8
    bandwidth: int = 64
    energy_slack: float = 1e-12  # relative
    max_halvings: int = 40

    def __post_init__(self):
        if self.step < 0:
            raise ValueError("step must be nonnegative")
        # explicit Euler on the |n| multiplier is stable for step * N <= 1
        if self.step * self.bandwidth > 1.0 + 1e-12:
            raise ValueError(f"step * bandwidth = {self.step * self.bandwidth:.3g} exceeds 1")
        if self.tol <= 0 or self.max_iter < 0 or self.oversample < 2:
            raise ValueError("invalid flow configuration")


@dataclass
class FlowTrajectory:
    iterations: list = field(default_factory=list)
    energies: list = field(default_factory=list)
    tangential: list = field(default_factory=list)
    stationarity: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    rejected: int = 0
    converged: bool = False
    final: CircleFunction | None = None

    def record(self, it, energy, tang, stat, step):
        self.iterations.append(it)
        self.energies.append(energy)
        self.tangential.append(tang)
        self.stationarity.append(stat)
        self.steps.append(step)

    def monotone(self, slack: float = 1e-10) -> bool:
        e = np.asarray(self.energies)
        return bool(np.all(np.diff(e) <= slack * (1 + np.abs(e[:-1]))))

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["iteration", "energy", "tangential_residual", "stationarity_residual", "step"])
            for row in zip(self.iterations, self.energies, self.tangential, self.stationarity, self.steps):
                w.writerow([row[0]] + [repr(float(x)) for x in row[1:]])


def _tangential_part(f: CircleFunction, M: int):
    U = to_samples(f, M)
    L = to_samples(half_laplacian(f), M)
    n = U / np.linalg.norm(U, axis=1, keepdims=True)
    T = L - np.sum(L * n, axis=1, keepdims=True) * n
    return U, T


def tangential_residual(f: CircleFunction, oversample: int = 8) -> float:
    """``|| P_T (-Delta)^{1/2} u ||_{L^2}`` on an oversampled grid."""
    M = oversample * (2 * f.bandwidth + 1)
    _, T = _tangential_part(f, M)
    return float(np.sqrt(TWO_PI * np.mean(np.sum(T * T, axis=1))))


def run_flow(f0: CircleFunction, cfg: FlowConfig) -> FlowTrajectory:
    """Projected explicit gradient flow ``u <- proj(u - step P_T (-Delta)^{1/2} u)``."""
    if not f0.real:
        raise ValueError("flow requires a real-valued map")
    N = cfg.bandwidth
    M = cfg.oversample * (2 * N + 1)
    u = sphere_project(f0, cfg.oversample, N)
    step = cfg.step
    traj = FlowTrajectory()

    def measure(g):
        U, T = _tangential_part(g, M)
        tang = float(np.sqrt(TWO_PI * np.mean(np.sum(T * T, axis=1))))
        stat = float(np.abs(hopf_coefficients(g)).max(initial=0.0))
        return U, T, tang, stat

    E = energy_spectral(u)
    U, T, tang, stat = measure(u)
    traj.record(0, E, tang, stat, step)
    if tang <= cfg.tol:
        traj.converged = True
        traj.final = u
        return traj

    for it in range(1, cfg.max_iter + 1):
        for _ in range(cfg.max_halvings + 1):
            W = U - step * T
            nrm = np.linalg.norm(W, axis=1)
            if nrm.min() < 1e-8:
                raise ProjectionError("iterate collapsed to zero")
            trial, _ = fit_samples(W / nrm[:, None], N)
            E_trial = energy_spectral(trial)
            if E_trial <= E + cfg.energy_slack * (1 + abs(E)):
                break
            step *= 0.5
            traj.rejected += 1
        else:
            raise FlowError(f"energy increase persists after {cfg.max_halvings} halvings at iteration {it}")
        u, E = trial, E_trial
        U, T, tang, stat = measure(u)
        traj.record(it, E, tang, stat, step)
        if tang <= cfg.tol:
            traj.converged = True
            break
    traj.final = u
    log.info("flow finished after %d iterations: residual %.3e, converged=%s",
             traj.iterations[-1], traj.tangential[-1], traj.converged)
    return traj
