"""Command-line front end.

    aclandau spectrum     --config FILE | --kind ... [--sigma ...]
    aclandau gauge-check  --config FILE [--chi 1.1=0.5]
    aclandau duality      --params FILE [--numerical]
    aclandau susy         --nb 6
    aclandau convergence  --config FILE --hs 0.25,0.125,0.0625

Exit codes: 0 success, 2 validation error, 3 solver failure, 4 analysis ambiguity.
The thread count for BLAS is read from ACLANDAU_THREADS.
"""
from __future__ import annotations

import argparse
import dataclasses
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import fields, pipeline, report
from .analysis import duality as dual
from .analysis.ladder import ladder_check
from .analysis.levels import cluster_levels, degeneracy_estimate, level_offset
from .analysis.susy import build_fock_algebra, susy_check
from .config import RunConfig, ValidationError, from_mapping, load, parse_text
from .discrete import commutator_residual, gaussian
from .errors import ClusteringAmbiguous, ConvergenceFailure, NotHarmonic, ZeroField
from .fields import GaugeFunction
from .grid import Grid2D
from .params import PhysicalParams, derive_units

log = logging.getLogger("aclandau")

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SOLVER = 3
EXIT_AMBIGUOUS = 4
THREADS_ENV = "ACLANDAU_THREADS"


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValidationError(f"{THREADS_ENV} must be >= 1")
    return n


def _resolve(args) -> RunConfig:
    cfg = load(args.config) if getattr(args, "config", None) else RunConfig()
    overrides = {}
    for key in ("kind", "sigma", "L", "n", "h", "k", "tol", "method", "levels", "window",
                "seed", "max_iter", "out", "formats", "base", "target", "hs"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    for term in getattr(args, "chi", None) or []:
        try:
            key, value = term.split("=")
            i, j = key.split(".")
        except ValueError:
            raise ValidationError(f"--chi expects i.j=value, got {term!r}") from None
        overrides[f"chi.{i}.{j}"] = value
    return from_mapping(overrides, cfg).validate()


def _field(rc: RunConfig):
    return pipeline.make_config(rc.kind, rc.sigma, rc.gauge, rc.base)


def _spectrum_payload(rc: RunConfig, run: pipeline.SpectrumRun) -> dict:
    spec = run.spectrum
    meta = {k: v for k, v in spec.metadata().items() if k != "seconds"}
    payload = {
        "command": "spectrum",
        "config": rc.to_dict(),
        "grid": run.grid.describe(),
        "field": run.cfg.describe(),
        "conditions": fields.check_landau_conditions(run.cfg, run.grid).to_dict(),
        "solver": meta,
        "converged": spec.converged,
        "eigenvalues": spec.eigenvalues,
        "residuals": spec.residuals,
    }
    return payload


def cmd_spectrum(args) -> int:
    rc = _resolve(args)
    cfg = _field(rc)
    grid = Grid2D(rc.L, rc.n)
    out = Path(rc.out)
    try:
        run = pipeline.run_spectrum(cfg, grid, levels=rc.levels, k=rc.k, tol=rc.tol,
                                    method=rc.method, seed=rc.seed, max_iter=rc.max_iter)
    except ConvergenceFailure as exc:
        payload = {"command": "spectrum", "config": rc.to_dict(), "status": "unconverged",
                   "error": str(exc), "iterations": exc.iterations,
                   "eigenvalues": exc.eigenvalues if exc.eigenvalues is not None else [],
                   "residuals": exc.residuals if exc.residuals is not None else []}
        report.write_json(out / "spectrum.json", payload)
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ClusteringAmbiguous as exc:
        report.write_json(out / "spectrum.json", {"command": "spectrum", "config": rc.to_dict(),
                                                  "status": "ambiguous", "error": str(exc),
                                                  "diagnostics": exc.diagnostics})
        print(f"clustering ambiguous: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS

    payload = _spectrum_payload(rc, run)
    payload["status"] = "ok"
    if rc.window is not None and run.offset is not None:
        try:
            run.clusters = cluster_levels(run.spectrum, cfg.sigma, rc.window, offset=run.offset, grid=grid)
        except ClusteringAmbiguous as exc:
            print(f"clustering ambiguous: {exc}", file=sys.stderr)
            return EXIT_AMBIGUOUS
        run.window_max = rc.window
    if cfg.kind is fields.Kind.FREE:
        exact = pipeline.box_levels(rc.L, len(run.spectrum))
        payload["box"] = {"analytic": exact,
                          "relative_error": (run.spectrum.eigenvalues - exact) / exact}
        lines = [f"{'index':>5} {'numeric':>14} {'analytic':>14} {'rel.err':>10}"]
        for i, (v, e) in enumerate(zip(run.spectrum.eigenvalues, exact)):
            lines.append(f"{i:5d} {v:14.8f} {e:14.8f} {(v - e) / e:10.2e}")
        print("\n".join(lines[: min(len(lines), 11)]))
    else:
        payload["expected_offset"] = run.offset
        payload["window_max"] = run.window_max
        payload["window_covered"] = run.window_covered
        payload["clusters"] = [c.to_dict() for c in run.clusters]
        payload["degeneracy"] = degeneracy_estimate(grid, run.spectrum, run.offset).to_dict()
        payload["ladder"] = ladder_check(run.spectrum, cfg, grid).to_dict()
        for c in run.clusters:
            print(f"nu={c.nu}  mean={c.mean:.6f}  expected={c.expected:.1f}  bulk states={c.count}")
        if not run.window_covered:
            print("warning: computed spectrum stops below the analysis window", file=sys.stderr)
    if "json" in rc.formats:
        report.write_json(out / "spectrum.json", payload)
        if run.offset is not None:
            report.write_json(out / "clusters.json", {"config": rc.to_dict(),
                                                      "clusters": payload["clusters"]})
    if "csv" in rc.formats:
        report.write_eigenvalue_csv(out / "eigenvalues.csv", run.spectrum.eigenvalues)
    return EXIT_OK


def gauge_comparison(rc: RunConfig) -> dict:
    """Compare ``rc.base`` transformed by chi with ``rc.target`` (both AC kinds)."""
    chi = rc.gauge
    if not chi.is_harmonic:
        raise NotHarmonic(f"chi = {chi.poly} is not harmonic")
    base = pipeline.make_config(rc.base, rc.sigma)
    target = pipeline.make_config(rc.target, rc.sigma, chi, rc.base) if rc.target == "gauge-transformed" \
        else pipeline.make_config(rc.target, rc.sigma)
    transformed = fields.gauge_transform(base, chi)
    grid = Grid2D(rc.L, rc.n)
    x, y = grid.xy
    b_base = np.broadcast_to(base.field_strength_poly(x, y), x.shape)
    b_target = np.broadcast_to(target.field_strength_poly(x, y), x.shape)
    dax = np.abs(target.ax(x, y) - transformed.ax(x, y))
    day = np.abs(target.ay(x, y) - transformed.ay(x, y))
    a_mismatch = float(np.max(np.maximum(dax, day)))
    hs = [rc.h * 4, rc.h * 2, rc.h]
    gaps = []
    for h in hs:
        g = Grid2D.from_spacing(rc.L, h)
        gaps.append(pipeline.gauge_gap(base, target, g, tol=rc.tol, method=rc.method))
    fit = None
    if all(v > 0 for v in gaps):
        from .analysis.convergence import fit_order
        fit = fit_order(hs, gaps).to_dict()
    return {
        "command": "gauge-check",
        "config": rc.to_dict(),
        "base": base.describe(),
        "target": target.describe(),
        "chi": str(chi.poly),
        "field_strength_max_diff": float(np.max(np.abs(b_base - b_target))),
        "vector_potential_mismatch": a_mismatch,
        "vector_potentials_match": a_mismatch <= fields.DEFAULT_TOL,
        "ground_energy_gaps": {"h": hs, "gap": gaps},
        "refinement": fit,
    }


def cmd_gauge_check(args) -> int:
    rc = _resolve(args)
    try:
        payload = gauge_comparison(rc)
    except NotHarmonic as exc:
        print(f"config rejected: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConvergenceFailure as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    report.write_json(Path(rc.out) / "gauge_check.json", payload)
    print(f"B_AC max diff: {payload['field_strength_max_diff']:.3e}")
    flag = "" if payload["vector_potentials_match"] else "  (MISMATCH: A' != A + grad chi)"
    print(f"vector potential mismatch: {payload['vector_potential_mismatch']:.3e}{flag}")
    for h, g in zip(payload["ground_energy_gaps"]["h"], payload["ground_energy_gaps"]["gap"]):
        print(f"h={h:<8g} ground-energy gap={g:.3e}")
    if payload["refinement"]:
        print(f"refinement order: {payload['refinement']['slope']:.3f}")
    return EXIT_OK


_DUAL_FLOAT = ("q", "phi", "S", "m", "hbar", "mu", "eps0", "c", "lambda")


def read_duality_params(path) -> dict:
    text = Path(path).read_text()
    import json
    items = json.loads(text) if text.lstrip().startswith("{") else parse_text(text)
    side = str(items.get("side", "charge")).strip()
    if side not in ("charge", "dipole"):
        raise ValidationError("side must be charge or dipole")
    vals = {"side": side}
    for key in _DUAL_FLOAT:
        if key in items:
            try:
                vals[key] = float(items[key])
            except ValueError:
                raise ValidationError(f"bad value for {key}: {items[key]!r}") from None
    need = {"charge": ("q", "phi", "S", "m", "hbar", "mu", "eps0", "c"),
            "dipole": ("mu", "lambda", "S", "m", "hbar", "eps0", "c", "q")}[side]
    missing = [k for k in need if k not in vals]
    if missing:
        raise ValidationError(f"missing duality parameters: {', '.join(missing)}")
    if vals["S"] == 0:
        raise ValidationError("area S must be nonzero")
    return vals


def duality_report(vals: dict) -> dict:
    if vals["side"] == "charge":
        charge = dual.StandardLandauParams(q=vals["q"], m=vals["m"], hbar=vals["hbar"],
                                           flux=vals["phi"], area=vals["S"])
        dipole = dual.charge_to_dipole(charge, vals["mu"], vals["eps0"], vals["c"])
    else:
        dipole = dual.DipoleLandauParams(mu=vals["mu"], line_density=vals["lambda"], area=vals["S"],
                                         m=vals["m"], hbar=vals["hbar"], eps0=vals["eps0"], c=vals["c"])
        charge = dual.dipole_to_charge(dipole, vals["q"])
    de_charge = dual.level_separation("charge", charge)
    de_dipole = dual.level_separation("dipole", dipole)
    return {
        "command": "duality",
        "input": vals,
        "charge": {"q": charge.q, "phi": charge.flux, "S": charge.area, "B": charge.B,
                   "omega": charge.omega},
        "dipole": {"mu": dipole.mu, "lambda": dipole.line_density, "S": dipole.area,
                   "rho0": dipole.rho0},
        "delta_E_charge": de_charge,
        "delta_E_dipole": de_dipole,
        "relative_difference": abs(de_charge - de_dipole) / abs(de_charge),
    }, charge, dipole


def numerical_gap_check(charge, dipole, L: float = 8.0, h: float = 0.25) -> dict:
    """Level gaps from two grid diagonalizations, converted back to SI."""
    units = derive_units(dipole.physical())
    grid = Grid2D.from_spacing(L, h)
    sl = pipeline.run_spectrum(fields.standard_landau(charge.sigma), grid, levels=2)
    ac = pipeline.run_spectrum(fields.symmetric(units.sigma), grid, levels=2)
    gap_sl = (sl.means[1] - sl.means[0]) * charge.hbar * abs(charge.omega)
    gap_ac = (ac.means[1] - ac.means[0]) * units.energy
    return {"grid": grid.describe(), "gap_charge": gap_sl, "gap_dipole": gap_ac,
            "relative_difference": abs(gap_sl - gap_ac) / abs(gap_sl)}


def cmd_duality(args) -> int:
    vals = read_duality_params(args.params)
    payload, charge, dipole = duality_report(vals)
    if args.numerical:
        payload["numerical"] = numerical_gap_check(charge, dipole)
    out = Path(args.out or "out")
    report.write_json(out / "duality.json", payload)
    print(f"dual lambda = {payload['dipole']['lambda']:.17g}  rho0 = {payload['dipole']['rho0']:.17g}")
    print(f"dual Phi    = {payload['charge']['phi']:.17g}")
    print(f"Delta E (charge) = {payload['delta_E_charge']:.17g}")
    print(f"Delta E (dipole) = {payload['delta_E_dipole']:.17g}")
    if "numerical" in payload:
        print(f"numerical gap relative difference = {payload['numerical']['relative_difference']:.3e}")
    return EXIT_OK


def cmd_susy(args) -> int:
    if args.nb < 2:
        raise ValidationError("N_B must be >= 2")
    rep = susy_check(build_fock_algebra(args.nb))
    payload = {"command": "susy", "n_boson": args.nb, **rep.to_dict()}
    report.write_json(Path(args.out or "out") / "susy.json", payload)
    for name, value in rep.residuals.items():
        print(f"{name:22s} {value:.3e}")
    print("spectrum:", " ".join(f"{v:g}" for v in rep.spectrum))
    print("paired:", rep.paired)
    return EXIT_OK


def convergence_report(rc: RunConfig) -> dict:
    if len(rc.hs) < 3:
        raise ValidationError("convergence needs at least 3 refinement levels")
    hs = sorted(rc.hs, reverse=True)
    cfg = _field(rc)
    studies = {}
    if cfg.kind is fields.Kind.FREE:
        studies["box_ground_energy"] = pipeline.free_box_study(rc.L, hs, tol=rc.tol, method=rc.method)
    else:
        studies["ground_energy"] = pipeline.ground_energy_study(cfg, rc.L, hs, tol=rc.tol, method=rc.method)
        studies["commutator"] = pipeline.commutator_study(cfg, rc.L, hs)
        if cfg.is_ac:
            studies["gauge_gap"] = pipeline.gauge_gap_study(fields.symmetric(rc.sigma), fields.plate(rc.sigma),
                                                            rc.L, hs, tol=rc.tol, method=rc.method)
    payload = {"command": "convergence", "config": rc.to_dict(),
               "studies": {k: v.to_dict() for k, v in studies.items()}}
    payload["flagged"] = [k for k, v in studies.items() if not v.monotone]
    return payload


def cmd_convergence(args) -> int:
    rc = _resolve(args)
    try:
        payload = convergence_report(rc)
    except ConvergenceFailure as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    report.write_json(Path(rc.out) / "convergence.json", payload)
    for name, s in payload["studies"].items():
        flag = "" if s["monotone"] else "  [non-monotone]"
        print(f"{name:18s} slope={s['slope']:.3f}  R^2={s['r2']:.4f}{flag}")
    return EXIT_OK


def _add_run_options(p):
    p.add_argument("--config", help="key = value or JSON run configuration")
    p.add_argument("--kind", choices=pipeline.KINDS)
    p.add_argument("--sigma", type=int, choices=(-1, 1))
    p.add_argument("--L", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--h", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--method")
    p.add_argument("--levels", type=int)
    p.add_argument("--window", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-iter", dest="max_iter", type=int)
    p.add_argument("--out")
    p.add_argument("--formats")
    p.add_argument("--base")
    p.add_argument("--chi", action="append", help="gauge coefficient i.j=value (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aclandau", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="diagonalize one configuration and cluster its levels")
    _add_run_options(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("gauge-check", help="compare two configurations related by a gauge function")
    _add_run_options(p)
    p.add_argument("--target")
    p.set_defaults(func=cmd_gauge_check)

    p = sub.add_parser("duality", help="charge <-> dipole parameter map and level spacings")
    p.add_argument("--params", required=True)
    p.add_argument("--numerical", action="store_true", help="also compare grid spectra")
    p.add_argument("--out")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("susy", help="check the truncated Fock-space algebra")
    p.add_argument("--nb", type=int, default=6)
    p.add_argument("--out")
    p.set_defaults(func=cmd_susy)

    p = sub.add_parser("convergence", help="refinement study of discretization error")
    _add_run_options(p)
    p.add_argument("--hs", help="comma-separated spacings, coarsest first")
    p.set_defaults(func=cmd_convergence)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        threads = _thread_count()
        from threadpoolctl import threadpool_limits

        with threadpool_limits(limits=threads):
            return args.func(args)
    except ValidationError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ZeroField as exc:
        print(f"analysis refused: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS


if __name__ == "__main__":
    sys.exit(main())
