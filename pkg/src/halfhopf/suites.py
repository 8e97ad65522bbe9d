"""Randomized identity suites driven by ``halfhopf verify``.

Every trial owns a child ``SeedSequence``; a failing check records the trial
index, its spawn key and the offending input so it can be replayed.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .commutator import d_s_pairing, fractional_divergence_pairing, probe_lemma_A2, probe_lemma_A3
from .energy import energy_spectral, h1_norm_sq
from .flows import blaschke_trace
from .hopf import coefficients_as_function, conjugate_identity_sides, fractional_hopf_from_variation, hopf_coefficients
from .mobius import MobiusMap, compose, dilation_field, naturality_defect
from .operators import half_laplacian
from .spectral import CircleFunction, max_coeff_diff, random_trig
from .variation import conservation_residual, noether_residual, pohozaev_residual, rotation_pohozaev

SUITES = ("pohozaev", "noether", "mobius", "commutator", "hopf-paths")


@dataclass
class CheckStats:
    bound_desc: str
    worst: float = 0.0        # largest value / bound seen
    worst_trial: int | None = None
    count: int = 0
    failures: list = field(default_factory=list)

    def add(self, trial: int, value: float, bound: float, payload) -> None:
        self.count += 1
        r = value / bound if bound > 0 else (0.0 if value == 0 else np.inf)
        if not np.isfinite(value):
            r = np.inf
        if r > self.worst or self.worst_trial is None:
            self.worst, self.worst_trial = float(r), trial
        if not r <= 1.0:
            self.failures.append({"trial": trial, "value": float(value), "bound": float(bound), **payload})

    def to_dict(self) -> dict:
        return {"bound": self.bound_desc, "count": self.count, "worst_ratio": self.worst,
                "worst_trial": self.worst_trial, "failures": self.failures[:10],
                "n_failures": len(self.failures)}


def _draw(rng, decay, n_max=16, dims=(1, 2, 3)):
    N = int(rng.integers(1, n_max + 1))
    k = int(rng.choice(dims))
    return random_trig(rng, N, k, decay)


def _blaschke(rng, N=96):
    d = int(rng.integers(1, 5))
    r = 0.6 * np.sqrt(rng.uniform(size=d))
    zeros = r * np.exp(2j * np.pi * rng.uniform(size=d))
    mu = np.exp(2j * np.pi * rng.uniform())
    return blaschke_trace(zeros, mu, N), zeros


def _inp(f: CircleFunction) -> dict:
    return {"input": f.to_dict()}


def trial_pohozaev(rng, decay):
    f = _draw(rng, decay)
    tol = 1e-10 * (1 + h1_norm_sq(f))
    out = [("rotation", abs(rotation_pohozaev(f)), tol, _inp(f))]
    for d in 2 * np.pi * np.arange(16) / 16:
        out.append(("dilation", abs(pohozaev_residual(f, d)), tol, {**_inp(f), "delta": float(d)}))
    return out


def trial_noether(rng, decay):
    f = _draw(rng, decay)
    c = rng.standard_normal(3)
    X = CircleFunction.from_dict({0: c[0], 1: (c[1] - 1j * c[2]) / 2, -1: (c[1] + 1j * c[2]) / 2}, real=True)
    out = [("identity", noether_residual(f, X, conformal=True).l2_norm(), 1e-11,
            {**_inp(f), "field": X.to_dict()})]
    b, zeros = _blaschke(rng)
    delta = float(rng.uniform(0, 2 * np.pi))
    payload = {"zeros": [[z.real, z.imag] for z in zeros], "delta": delta}
    for X in (CircleFunction.constant(1.0), dilation_field(delta)):
        out.append(("conservation", conservation_residual(b, X).l2_norm(), 1e-8, payload))
    return out


def trial_mobius(rng, decay):
    f = _draw(rng, decay, dims=(1, 2, 3))
    a = 0.4 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    m = MobiusMap(a, np.exp(2j * np.pi * rng.uniform()))
    N_out = 8 * f.bandwidth
    E = energy_spectral(f)
    Em = energy_spectral(compose(f, m, N_out=N_out))
    payload = {**_inp(f), "map": m.to_dict()}
    nat = naturality_defect(f, m, N_out=N_out)
    return [("energy", abs(Em - E), 1e-6 * max(E, 1e-300), payload),
            ("naturality", nat, 1e-6 * max(half_laplacian(f).l2_norm(), 1e-300), payload)]


def trial_commutator(rng, decay):
    out = []
    for s in (0.1, 0.25, 0.4):
        a = random_trig(rng, int(rng.integers(1, 33)), 1, decay)
        phi = random_trig(rng, int(rng.integers(1, 17)), 1, decay)
        p = probe_lemma_A2(a, phi, s)
        out.append((f"commutator s={s}", p.ratio, p.constant_cap, {"a": a.to_dict(), "phi": phi.to_dict()}))
    a, b, phi = (random_trig(rng, int(rng.integers(1, 17)), 1, decay) for _ in range(3))
    p = probe_lemma_A3(a, b, phi)
    payload = {"a": a.to_dict(), "b": b.to_dict(), "phi": phi.to_dict()}
    out.append(("pairing", p.ratio, p.constant_cap, payload))
    s = float(rng.choice([0.1, 0.25, 0.4, 0.5]))
    ref = d_s_pairing(a, b, phi, s)
    val = fractional_divergence_pairing(a, b, phi, s)
    out.append(("divergence", abs(val - ref), 1e-10 * max(1.0, abs(ref)), {**payload, "s": s}))
    return out


def trial_hopf_paths(rng, decay):
    f = _draw(rng, decay)
    ref = coefficients_as_function(hopf_coefficients(f))
    lhs, rhs = conjugate_identity_sides(f)
    return [("variation-path", max_coeff_diff(fractional_hopf_from_variation(f), ref), 1e-11, _inp(f)),
            ("conjugate", max_coeff_diff(lhs, rhs), 1e-11, _inp(f))]


TRIALS = {"pohozaev": trial_pohozaev, "noether": trial_noether, "mobius": trial_mobius,
          "commutator": trial_commutator, "hopf-paths": trial_hopf_paths}


def n_threads() -> int:
    env = os.environ.get("HALFHOPF_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def run_suite(name: str, trials: int, seed: int, decay: float = 1.5) -> dict:
    if name == "all":
        parts = {s: run_suite(s, trials, seed, decay) for s in SUITES}
        return {"suite": "all", "trials": trials, "seed": seed, "decay": decay,
                "passed": all(p["passed"] for p in parts.values()), "suites": parts}
    if name not in TRIALS:
        raise ValueError(f"unknown suite {name!r}")
    fn = TRIALS[name]
    children = np.random.SeedSequence(seed).spawn(trials)

    def one(i):
        return fn(np.random.default_rng(children[i]), decay)

    with ThreadPoolExecutor(max_workers=n_threads()) as ex:
        results = list(ex.map(one, range(trials)))
    stats: dict[str, CheckStats] = {}
    for i, rows in enumerate(results):
        for check, value, bound, payload in rows:
            st = stats.setdefault(check, CheckStats(_BOUNDS.get(check, "tolerance")))
            st.add(i, value, bound, {"spawn_key": list(children[i].spawn_key), **payload})
    return {"suite": name, "trials": trials, "seed": seed, "decay": decay,
            "passed": all(not st.failures for st in stats.values()),
            "checks": {k: v.to_dict() for k, v in sorted(stats.items())}}


# the values in ``worst_ratio`` are divided by these bounds
_BOUNDS = {
    "rotation": "1e-10 (1 + ||u||_H1^2)",
    "dilation": "1e-10 (1 + ||u||_H1^2)",
    "identity": "1e-11 absolute",
    "conservation": "1e-8 absolute",
    "energy": "1e-6 relative",
    "naturality": "1e-6 ||(-Delta)^1/2 u||",
    "commutator s=0.1": "2 pi 3^(1-2s) sqrt(1+s^2)",
    "commutator s=0.25": "2 pi 3^(1-2s) sqrt(1+s^2)",
    "commutator s=0.4": "2 pi 3^(1-2s) sqrt(1+s^2)",
    "pairing": "2 pi (sqrt(3/2) + 2)",
    "divergence": "1e-10 max(1, |value|)",
    "variation-path": "1e-11 absolute",
    "conjugate": "1e-11 absolute",
}
