"""Command-line surface.

Subcommands: simulate, experiment, norms, check-inequality. Exit codes:
0 all verdicts pass, 1 any fail, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import nonlinearity
from .diagnostics import energy, hs_gagliardo_norm, mass
from .experiments import (
    ExperimentReport,
    run_convergence_order,
    run_eps_cauchy,
    run_galilean,
    run_h1_approximation,
    run_hs_growth,
    run_lipschitz,
    run_scaling_invariance,
)
from .data import make_datum
from .geometry import LatticeVelocity
from .integrator import SimConfig, evolve
from .io import (
    ConfigDocument,
    ConfigError,
    SnapshotFormatError,
    load_config,
    read_snapshot,
    write_snapshot,
    write_timeseries,
)
from .spectral import hs_multiplier_norm

__all__ = ["main"]


def _sim_config(doc: ConfigDocument) -> SimConfig:
    return SimConfig(geometry=doc.geometry, **doc.sim)


def _print_report(report: ExperimentReport) -> None:
    print(f"experiment : {report.name}")
    print(f"digest     : {report.config_digest[:16]}")
    print(f"samples    : {report.n_samples}")
    for label in sorted(report.margins):
        print(f"  {label:<32} {report.margins[label]:.6e}")
    print(f"verdict    : {report.verdict.upper()}")


def _report_json(report: ExperimentReport) -> dict:
    out = dataclasses.asdict(report)
    out["verdict"] = report.verdict
    return out


def _cmd_simulate(args) -> int:
    doc = load_config(args.config)
    if doc.datum is None:
        raise ConfigError(["datum: missing required key"])
    config = _sim_config(doc)
    datum = make_datum(doc.datum, config.geometry)
    traj = evolve(datum, config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_timeseries(traj.records, out_dir / "timeseries.csv")
    for i, (t, field) in enumerate(traj.snapshots):
        write_snapshot(field, t, out_dir / f"snapshot_{i:06d}.bin")
    print(f"wrote {out_dir / 'timeseries.csv'} ({len(traj.records)} records, "
          f"{len(traj.snapshots)} snapshots)")
    return 0


_EXPERIMENT_KEYS = {
    "lipschitz": set(),
    "hs-growth": set(),
    "scaling": {"z"},
    "galilean": {"boost_modes"},
    "eps-cauchy": {"eps_sequence"},
    "h1-approx": {"cutoffs"},
    "convergence": {"dt_ladder"},
}


def _experiment_params(name: str, doc: ConfigDocument) -> dict:
    required = _EXPERIMENT_KEYS[name]
    errors = [f"experiment.{k}: unknown key" for k in sorted(set(doc.experiment) - required)]
    errors += [f"experiment.{k}: missing required key" for k in sorted(required - set(doc.experiment))]
    if name != "lipschitz" and doc.datum is None:
        errors.append("datum: missing required key")
    if name == "lipschitz" and (doc.datum is None or doc.datum_b is None):
        errors.append("lipschitz requires both datum and datum_b")
    if errors:
        raise ConfigError(errors)
    return doc.experiment


def _cmd_experiment(args) -> int:
    doc = load_config(args.config)
    config = _sim_config(doc)
    params = _experiment_params(args.name, doc)

    if args.name == "lipschitz":
        report = run_lipschitz(doc.datum, doc.datum_b, config)
    elif args.name == "hs-growth":
        report = run_hs_growth(doc.datum, config)
    elif args.name == "scaling":
        z = params["z"]
        z = complex(z[0], z[1]) if isinstance(z, list) else complex(z)
        report = run_scaling_invariance(doc.datum, z, config)
    elif args.name == "galilean":
        velocity = LatticeVelocity(tuple(params["boost_modes"]))
        report = run_galilean(doc.datum, velocity, config)
    elif args.name == "eps-cauchy":
        report = run_eps_cauchy(doc.datum, config, list(params["eps_sequence"]))
    elif args.name == "h1-approx":
        report = run_h1_approximation(doc.datum, list(params["cutoffs"]), config)
    else:
        report = run_convergence_order(doc.datum, config, list(params["dt_ladder"]))

    _print_report(report)
    Path(args.out).write_text(json.dumps(_report_json(report), indent=2) + "\n")
    return 0 if report.passed else 1


def _cmd_norms(args) -> int:
    field, t = read_snapshot(args.snapshot)
    s_values = [float(tok) for tok in args.s.split(",") if tok]
    print(f"time   : {t:.17g}")
    print(f"mass   : {mass(field):.17g}")
    print(f"energy : {energy(field, args.lam, args.eps):.17g}")
    for s in s_values:
        from .diagnostics import hs_norm

        line = f"H^{s:g}  : multiplier {hs_norm(field, s):.17g}"
        if 0.0 < s < 1.0:
            line += f"  gagliardo {hs_gagliardo_norm(field, s):.17g}"
        print(line)
    return 0


def _cmd_check_inequality(args) -> int:
    """Randomized suite for the monotonicity-gap inequality (and its eps = 0 case)."""
    rng = np.random.default_rng(args.seed)
    n = args.samples
    worst = 0.0
    for eps_zero in (False, True):
        remaining = n
        while remaining > 0:
            chunk = min(remaining, 1_000_000)
            remaining -= chunk
            moduli = 10.0 ** rng.uniform(-15, 15, size=(2, chunk))
            phases = np.exp(2j * np.pi * rng.random((2, chunk)))
            z1, z2 = moduli * phases
            if eps_zero:
                e1 = e2 = np.zeros(chunk)
            else:
                e1, e2 = 10.0 ** rng.uniform(-15, 15, size=(2, chunk))
            gap = np.abs(nonlinearity.monotonicity_gap(z1, z2, e1, e2))
            bound = nonlinearity.monotonicity_bound(z1, z2, e1, e2)
            slack = 1e-12 * (1.0 + np.abs(z1 - z2) ** 2)
            margin = float(np.max(gap - bound - slack))
            worst = max(worst, margin)
    print(f"samples per case : {n}")
    print(f"worst margin     : {worst:.6e} (<= 0 passes)")
    print("verdict          :", "PASS" if worst <= 0.0 else "FAIL")
    return 0 if worst <= 0.0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logns",
        description="Split-step spectral solver and verification harness for the "
        "logarithmic Schrodinger equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one simulation, write CSV and snapshots")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("name", choices=sorted(_EXPERIMENT_KEYS))
    p.add_argument("--config", required=True)
    p.add_argument("--out", default="report.json", help="JSON report destination")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("norms", help="print norms of a snapshot file")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--s", required=True, help="comma-separated Sobolev exponents")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.set_defaults(func=_cmd_norms)

    p = sub.add_parser("check-inequality", help="randomized monotonicity-gap suite")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check_inequality)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return 2
    except (SnapshotFormatError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
