"""``halfhopf`` command line: analyze, verify, flow, export.

Exit codes: 0 success, 1 failed verification, 2 bad input / undefined
projection / NaN in a report, 3 analyzed map not stationary, 4 flow hit
``--max-iter`` without converging.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .flows import FlowConfig, FlowError, run_flow
from .hopf import disc_grid, hopf_differential_at
from .operators import harmonic_extension_eval
from .reports import analyze, has_nan
from .spectral import CircleFunction, SchemaError
from .suites import SUITES, run_suite

log = logging.getLogger("halfhopf")

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NOT_STATIONARY, EXIT_MAX_ITER = 0, 1, 2, 3, 4


@dataclass
class RunManifest:
    command: str
    input: str | None
    parameters: dict
    seed: int | None = None
    outputs: list = field(default_factory=list)
    version: str = __version__

    def to_dict(self) -> dict:
        return {"command": self.command, "input": self.input, "parameters": self.parameters,
                "seed": self.seed, "outputs": sorted(self.outputs), "version": self.version}


def _clean(obj):
    """Replace non-finite floats by strings so the output stays valid JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return _clean(obj.item())
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, indent=2) + "\n"


class Writer:
    """Collects artifacts and writes them, plus the manifest, in one pass at the end."""

    def __init__(self, out: Path, manifest: RunManifest):
        self.out = out
        self.manifest = manifest
        self.files: dict[str, str] = {}

    def add(self, name: str, text: str) -> None:
        self.files[name] = text

    def add_csv(self, name: str, header, rows) -> None:
        lines = [",".join(header)]
        for r in rows:
            lines.append(",".join(x if isinstance(x, str) else repr(float(x)) for x in r))
        self.add(name, "\n".join(lines) + "\n")

    def commit(self) -> None:
        self.out.mkdir(parents=True, exist_ok=True)
        self.manifest.outputs = [str(self.out / n) for n in self.files] + [str(self.out / "manifest.json")]
        for name, text in self.files.items():
            (self.out / name).write_text(text)
        (self.out / "manifest.json").write_text(dump_json(self.manifest.to_dict()))


def load_function(path: str) -> CircleFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    return CircleFunction.from_json(text)


def parse_grid(text: str) -> tuple[int, int]:
    try:
        nr, nt = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like R:T, got {text!r}") from None
    if nr < 1 or nt < 1:
        raise argparse.ArgumentTypeError("grid resolutions must be positive")
    return nr, nt


def _resize(f: CircleFunction, N: int | None) -> CircleFunction:
    if N is None or N == f.bandwidth:
        return f
    return f.truncate(N) if N < f.bandwidth else f.pad(N)


def cmd_analyze(args) -> int:
    f = _resize(load_function(args.input), args.bandwidth)
    M = args.oversample * (2 * max(f.bandwidth, 1) + 1)
    res, norms, hopf = analyze(f, grid=args.grid, r_max=args.r_max, quadrature=M)
    # the residual scales like |u|^2, so the threshold follows the energy
    threshold = args.tol * (1.0 + norms.energy_spectral)
    stationary = res.stationarity <= threshold
    report = {"residuals": res.to_dict(), "norms": norms.to_dict(), "hopf": hopf.to_dict(),
              "tol": args.tol, "threshold": threshold, "stationary": stationary}
    man = RunManifest("analyze", args.input, {"tol": args.tol, "grid": list(args.grid), "r_max": args.r_max,
                                              "bandwidth": f.bandwidth, "oversample": args.oversample})
    w = Writer(Path(args.out), man)
    w.add("analysis.json", dump_json(report))
    w.add_csv("hopf_disc.csv", ["r", "theta", "re", "im", "abs"],
              [(r, t, v.real, v.imag, abs(v)) for r, t, v in hopf.disc_samples])
    w.commit()
    if has_nan(report):
        log.error("NaN in analysis report")
        return EXIT_INPUT
    log.info("stationarity residual %.3e (tol %.1e)", res.stationarity, args.tol)
    return EXIT_OK if stationary else EXIT_NOT_STATIONARY


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.trials, args.seed, args.decay)
    man = RunManifest("verify", None, {"suite": args.suite, "trials": args.trials, "decay": args.decay},
                      seed=args.seed)
    w = Writer(Path(args.out), man)
    w.add("verify.json", dump_json(report))
    w.commit()
    if has_nan(report):
        return EXIT_INPUT
    log.info("suite %s: %s", args.suite, "pass" if report["passed"] else "FAIL")
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def cmd_flow(args) -> int:
    f0 = load_function(args.input)
    N = args.bandwidth if args.bandwidth is not None else max(f0.bandwidth, 1)
    step = args.step if args.step is not None else 1.0 / N
    try:
        cfg = FlowConfig(step=step, max_iter=args.max_iter, tol=args.tol, oversample=args.oversample, bandwidth=N)
    except ValueError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    try:
        traj = run_flow(f0, cfg)
    except (FlowError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    params = {"step": step, "max_iter": args.max_iter, "tol": args.tol,
              "oversample": args.oversample, "bandwidth": N}
    w = Writer(Path(args.out), RunManifest("flow", args.input, params))
    w.add_csv("trajectory.csv",
              ["iteration", "energy", "tangential_residual", "stationarity_residual", "step"],
              [(str(i), e, t, s, h) for i, e, t, s, h in
               zip(traj.iterations, traj.energies, traj.tangential, traj.stationarity, traj.steps)])
    w.add("final.json", dump_json(traj.final.to_dict()))
    summary = {"converged": traj.converged, "iterations": traj.iterations[-1],
               "energy": traj.energies[-1], "tangential_residual": traj.tangential[-1],
               "stationarity_residual": traj.stationarity[-1], "rejected_steps": traj.rejected,
               "monotone": traj.monotone()}
    w.add("flow.json", dump_json(summary))
    w.commit()
    if has_nan(summary):
        return EXIT_INPUT
    return EXIT_OK if traj.converged else EXIT_MAX_ITER


def cmd_export(args) -> int:
    f = _resize(load_function(args.input), args.bandwidth)
    R, T = disc_grid(*args.grid, r_max=args.r_max)
    ext = harmonic_extension_eval(f, R, T)
    hopf = hopf_differential_at(f, R * np.exp(1j * T))
    header = ["r", "theta"]
    for j in range(f.dim):
        header += [f"u{j}_re", f"u{j}_im"]
    header += ["hopf_re", "hopf_im", "hopf_abs"]
    rows = []
    for i in range(R.size):
        row = [R[i], T[i]]
        for j in range(f.dim):
            row += [ext[i, j].real, ext[i, j].imag]
        rows.append(row + [hopf[i].real, hopf[i].imag, abs(hopf[i])])
    params = {"grid": list(args.grid), "r_max": args.r_max, "bandwidth": f.bandwidth}
    w = Writer(Path(args.out), RunManifest("export", args.input, params))
    w.add_csv("extension.csv", header, rows)
    w.commit()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="halfhopf", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="residual, norm and Hopf reports for one map")
    a.add_argument("--input", required=True)
    a.add_argument("--out", default="out")
    a.add_argument("--tol", type=float, default=1e-8)
    a.add_argument("--grid", type=parse_grid, default=(16, 64), help="disc grid R:T")
    a.add_argument("--r-max", type=float, default=0.95)
    a.add_argument("--bandwidth", type=int)
    a.add_argument("--oversample", type=int, default=8, help="Gagliardo points per coefficient")
    a.set_defaults(run=cmd_analyze)

    v = sub.add_parser("verify", help="randomized identity suites")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--decay", type=float, default=1.5, help="coefficient decay exponent p")
    v.add_argument("--out", default="out")
    v.set_defaults(run=cmd_verify)

    fl = sub.add_parser("flow", help="projected gradient flow onto the sphere")
    fl.add_argument("--input", required=True)
    fl.add_argument("--out", default="out")
    fl.add_argument("--step", type=float, help="default 1/bandwidth")
    fl.add_argument("--max-iter", type=int, default=50_000)
    fl.add_argument("--tol", type=float, default=1e-6)
    fl.add_argument("--bandwidth", type=int)
    fl.add_argument("--oversample", type=int, default=8)
    fl.set_defaults(run=cmd_flow)

    e = sub.add_parser("export", help="extension and Hopf values on a polar grid")
    e.add_argument("--input", required=True)
    e.add_argument("--out", default="out")
    e.add_argument("--grid", type=parse_grid, default=(8, 32), help="disc grid R:T")
    e.add_argument("--r-max", type=float, default=1.0)
    e.add_argument("--bandwidth", type=int)
    e.set_defaults(run=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "trials", 0) < 0:
        log.error("--trials must be nonnegative")
        return EXIT_INPUT
    try:
        return args.run(args)
    except SchemaError as exc:
        log.error("malformed input: %s", exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
