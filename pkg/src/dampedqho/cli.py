"""Command-line interface: ``dampedqho {spectrum,nu,gauge-check,sweep,verify}``.

Exit codes: 0 pass, 1 usage/config error, 2 verification failure.
Settings resolve as built-in defaults < ``--config`` JSON < flags.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import acceptance, analysis, gauge, nu, report
from .errors import DampedQHOError, NoBoundStateBranch
from .model import OrderingScheme, PhysParams, Regime, regime_of
from .operators import FockBasis, Grid

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2

DEFAULTS = {
    "m": 1.0,
    "omega": 1.0,
    "lambda": 1.0,
    "hbar": 1.0,
    "ordering": "sym",
    "backend": "fock",
    "L": None,
    "n_points": 801,
    "n_basis": 128,
    "omega_basis": None,
    "levels": 8,
    "tol_abs": None,
    "format": "json",
    "out": None,
    "seed": 0,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass(frozen=True)
class RunConfig:
    params: PhysParams
    ordering: OrderingScheme
    backend: str
    half_width: float | None
    n_points: int
    n_basis: int
    omega_basis: float | None
    levels: int
    tol_abs: float | None
    format: str
    out: str | None
    seed: int
    explicit: frozenset

    def context(self):
        if self.backend == "fock":
            return FockBasis.for_params(self.params, self.n_basis, self.omega_basis)
        if self.half_width is None:
            return Grid.for_params(self.params, self.n_points)
        return Grid(self.half_width, self.n_points)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--lambda", dest="lambda_", type=float)
    p.add_argument("--hbar", type=float)
    p.add_argument("--ordering", choices=["yp", "py", "sym"])
    p.add_argument("--backend", choices=["grid", "fock"])
    p.add_argument("--L", dest="L", type=float)
    p.add_argument("--n-points", type=int)
    p.add_argument("--n-basis", type=int)
    p.add_argument("--omega-basis", type=float)
    p.add_argument("--levels", type=int)
    p.add_argument("--tol-abs", type=float)
    p.add_argument("--format", choices=["json", "csv"])
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dampedqho", description="Damped-oscillator quantization toolkit.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    sp = sub.add_parser("spectrum", help="numeric spectrum vs closed form")
    _common(sp)

    np_ = sub.add_parser("nu", help="Nikiforov-Uvarov levels for a preset equation")
    _common(np_)
    np_.add_argument("--preset", required=True)

    gp = sub.add_parser("gauge-check", help="gauge equivalence on the grid")
    _common(gp)
    gp.add_argument("--variant", choices=sorted(gauge.VARIANTS), default="lambda-sq-over-4")

    wp = sub.add_parser("sweep", help="levels over a list of damping values")
    _common(wp)
    wp.add_argument("--lambdas", default="0,0.5,1,1.5,1.9,2,3")

    vp = sub.add_parser("verify", help="run every acceptance criterion")
    vp.add_argument("--json", action="store_true")
    vp.add_argument("--seed", type=int, default=0)
    vp.add_argument("--only", default=None, help=argparse.SUPPRESS)
    vp.add_argument("--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    return parser


_CONFIG_KEYS = {k.replace("_", "-"): k for k in DEFAULTS} | {k: k for k in DEFAULTS}


def _load_config(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config file must hold a JSON object")
    out = {}
    for key, val in raw.items():
        if key not in _CONFIG_KEYS:
            raise UsageError(f"unknown config key {key!r}")
        out[_CONFIG_KEYS[key]] = val
    return out


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    merged = dict(DEFAULTS)
    explicit = set()
    if getattr(ns, "config", None):
        cfg = _load_config(ns.config)
        merged.update(cfg)
        explicit.update(cfg)
    flags = {
        "m": ns.m,
        "omega": ns.omega,
        "lambda": ns.lambda_,
        "hbar": ns.hbar,
        "ordering": ns.ordering,
        "backend": ns.backend,
        "L": ns.L,
        "n_points": ns.n_points,
        "n_basis": ns.n_basis,
        "omega_basis": ns.omega_basis,
        "levels": ns.levels,
        "tol_abs": ns.tol_abs,
        "format": ns.format,
        "out": ns.out,
        "seed": ns.seed,
    }
    for key, val in flags.items():
        if val is not None:
            merged[key] = val
            explicit.add(key)
    try:
        params = PhysParams(
            m=float(merged["m"]),
            omega=float(merged["omega"]),
            lambda_damp=float(merged["lambda"]),
            hbar=float(merged["hbar"]),
        )
        ordering = OrderingScheme.parse(str(merged["ordering"]))
        for key in ("m", "omega", "lambda", "hbar", "L", "omega_basis", "tol_abs"):
            if merged[key] is not None and not math.isfinite(float(merged[key])):
                raise ValueError(f"{key} must be finite")
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if merged["backend"] not in ("grid", "fock"):
        raise UsageError("backend must be grid or fock")
    if merged["format"] not in ("json", "csv"):
        raise UsageError("format must be json or csv")
    if int(merged["levels"]) < 1:
        raise UsageError("levels must be >= 1")
    return RunConfig(
        params=params,
        ordering=ordering,
        backend=merged["backend"],
        half_width=None if merged["L"] is None else float(merged["L"]),
        n_points=int(merged["n_points"]),
        n_basis=int(merged["n_basis"]),
        omega_basis=None if merged["omega_basis"] is None else float(merged["omega_basis"]),
        levels=int(merged["levels"]),
        tol_abs=None if merged["tol_abs"] is None else float(merged["tol_abs"]),
        format=merged["format"],
        out=merged["out"],
        seed=int(merged["seed"]),
        explicit=frozenset(explicit),
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, newline="\n")
    else:
        sys.stdout.write(text)


def cmd_spectrum(cfg: RunConfig) -> int:
    rep = analysis.compare_spectrum(cfg.params, cfg.ordering, cfg.context(), cfg.levels, cfg.tol_abs)
    text = report.spectrum_to_csv(rep) if cfg.format == "csv" else report.dumps(report.spectrum_to_dict(rep))
    _emit(text, cfg.out)
    if rep.warning:
        print(f"warning: {rep.warning}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _pair(z: complex) -> list[float]:
    # adding 0.0 folds -0.0 into 0.0
    return [z.real + 0.0, z.imag + 0.0]


def cmd_nu(cfg: RunConfig, preset: str) -> int:
    if preset not in nu.PRESETS:
        raise UsageError(f"unknown preset {preset!r}; choose from {', '.join(nu.PRESETS)}")
    try:
        sol = nu.solve_preset(preset, cfg.params, cfg.levels - 1)
    except NoBoundStateBranch as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    if cfg.format == "csv":
        rows = [["n", "re", "im"]] + [[n, e.real, e.imag] for n, e in enumerate(sol.levels)]
        text = report._csv(rows)
    else:
        doc = {
            "schema_version": report.SCHEMA_VERSION,
            "preset": preset,
            "params": cfg.params.to_dict(),
            "k": None if sol.k is None else [_pair(z) for z in sol.k],
            "pi": [_pair(c) for c in sol.pi_poly.coeffs],
            "tau": [_pair(c) for c in sol.tau.coeffs],
            "alpha": _pair(sol.alpha),
            "levels": [{"n": n, "re": e.real, "im": e.imag} for n, e in enumerate(sol.levels)],
        }
        text = report.dumps(doc)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_gauge_check(cfg: RunConfig, variant: str) -> int:
    if cfg.backend == "fock" and "backend" in cfg.explicit:
        raise UsageError("gauge-check: grid only")
    if regime_of(cfg.params) is not Regime.UNDERDAMPED:
        raise UsageError("gauge-check needs underdamped parameters (lambda < 2 omega)")
    grid = Grid.for_params(cfg.params, cfg.n_points) if cfg.half_width is None else Grid(cfg.half_width, cfg.n_points)
    rep = gauge.gauge_equivalence_defect(grid, cfg.params, variant)
    eig_ok = rep.eig_relative_dev <= 5e-3
    if rep.exact:
        ok = eig_ok
    else:
        ok = rep.order is not None and 1.8 <= rep.order <= 2.2 and eig_ok
    doc = {
        "schema_version": report.SCHEMA_VERSION,
        "params": cfg.params.to_dict(),
        "backend": {"kind": "grid", "L": grid.half_width, "n_points": [rep.n_coarse, rep.n_fine]},
        "variant": variant,
        "defect": rep.defect,
        "defect_coarse": rep.defect_coarse,
        "order": rep.order,
        "exact": rep.exact,
        "smooth_defect": rep.smooth_defect,
        "smooth_order": rep.smooth_order,
        "eig_rel_dev": rep.eig_relative_dev,
        "pass": ok,
    }
    if cfg.format == "csv":
        keys = ["defect", "defect_coarse", "order", "smooth_defect", "smooth_order", "eig_rel_dev", "pass"]
        text = report._csv([keys, [doc[k] if not isinstance(doc[k], bool) else str(doc[k]).lower() for k in keys]])
    else:
        text = report.dumps(acceptance._clean(doc))
    _emit(text, cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(cfg: RunConfig, lambdas: str) -> int:
    try:
        values = [float(x) for x in lambdas.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --lambdas: {exc}") from exc
    if any(v < 0 or not math.isfinite(v) for v in values):
        raise UsageError("damping values must be finite and >= 0")
    rows = analysis.damping_sweep(
        cfg.params,
        values,
        backend=cfg.backend,
        n_levels=cfg.levels,
        ordering=cfg.ordering,
        n_basis=cfg.n_basis,
        n_points=cfg.n_points,
        omega_basis=cfg.omega_basis,
    )
    if cfg.format == "csv":
        text = report.sweep_to_csv(rows)
    else:
        text = report.dumps(report.sweep_to_dict(rows, cfg.params.to_dict(), cfg.backend, cfg.ordering))
    _emit(text, cfg.out)
    tol = cfg.tol_abs
    if tol is None:
        tol = analysis.FOCK_TOL if cfg.backend == "fock" else analysis.GRID_TOL
    bad = [r for r in rows if r.comparable and r.abs_err is not None and r.abs_err > tol]
    return EXIT_FAIL if bad else EXIT_OK


def cmd_verify(as_json: bool, seed: int, scale: float, only: str | None) -> int:
    numbers = [int(x) for x in only.split(",")] if only else None
    results = acceptance.run_all(scale=scale, seed=seed, only=numbers)
    ok = all(r.passed for r in results)
    if as_json:
        doc = {"schema_version": report.SCHEMA_VERSION, "criteria": [r.to_dict() for r in results], "pass": ok}
        sys.stdout.write(report.dumps(doc))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "verify":
            return cmd_verify(ns.json, ns.seed, ns.tolerance_scale, ns.only)
        cfg = resolve_config(ns)
        if ns.command == "spectrum":
            return cmd_spectrum(cfg)
        if ns.command == "nu":
            return cmd_nu(cfg, ns.preset)
        if ns.command == "gauge-check":
            return cmd_gauge_check(cfg, ns.variant)
        return cmd_sweep(cfg, ns.lambdas)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except DampedQHOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
