"""Command-line front end.

Exit codes: 0 success, 1 physics/domain error (or a failed validation),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
import warnings
from dataclasses import asdict, replace
from pathlib import Path

from . import __version__, critical, oracle, spectrum, validation, wavefunction
from .config import FORMATS, RunConfig, load_config
from .errors import ConfigError, PhysicsError
from .model import QuantumNumbers, effective_frequency_sq
from .output import write_table

OUTPUT_DIR_ENV = "QUADRUPOLE_SCREW_OUTPUT_DIR"


def _states(cfg: RunConfig) -> list[QuantumNumbers]:
    if not cfg.n or not cfg.ell:
        raise ConfigError("empty quantum-number range (n and ell must each list at least one value)")
    try:
        return [QuantumNumbers(n, ell) for n in cfg.n for ell in cfg.ell]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_spectrum(cfg: RunConfig):
    p, v = cfg.system(), cfg.potential()
    states = _states(cfg)
    effective_frequency_sq(p, v)
    rows = []
    for q in states:
        level = spectrum.energy(p, v, q)
        rows.append(dict(n=q.n, ell=q.ell, nu=q.ell - p.beta * p.k,
                         energy=level.energy, case=level.case))
    columns = ["n", "ell", "nu", "energy", "case"]
    if cfg.oracle:
        count = max(cfg.n) + 1
        ocfg = oracle.OracleConfig(rho_max=cfg.rho_max, grid_points=cfg.grid_points,
                                   eigs_requested=count)
        solved = {ell: oracle.solve_radial(p, v, ell, ocfg) for ell in cfg.ell}
        for row in rows:
            row["oracle_energy"] = float(solved[row["ell"]].eigenvalues[row["n"]])
        columns.append("oracle_energy")
    return columns, rows, []


def cmd_sweep(cfg: RunConfig):
    values = cfg.sweep_values()
    p, v = cfg.system(), cfg.potential()
    rows = []
    for x in values:
        if cfg.axis in ("omega", "beta"):
            try:
                point = p.replace(**{cfg.axis: float(x)})
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            states = _states(cfg)
            axis_value = float(x)
        else:
            point = p
            states = _states(replace(cfg, **{cfg.axis: (int(x),)}))
            axis_value = int(x)
        for q in states:
            rows.append(dict(axis_value=axis_value, n=q.n, ell=q.ell,
                             energy=spectrum.energy(point, v, q).energy))
    return ["axis_value", "n", "ell", "energy"], rows, [f"axis={cfg.axis}"]


def cmd_critical(cfg: RunConfig):
    p, v = cfg.system(), cfg.potential()
    rows = []
    for q in _states(cfg):
        row = dict(n=q.n, ell=q.ell, branch=cfg.branch, omega_c_closed=float("nan"),
                   omega_c_bisect=float("nan"), residual=float("nan"), status="ok")
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                closed = critical.omega_c_closed(p, v, q, cfg.branch)
            row.update(omega_c_closed=closed.omega_c, residual=closed.residual)
        except PhysicsError as exc:
            row["status"] = type(exc).__name__
        try:
            row["omega_c_bisect"] = critical.omega_c_bisect(p, v, q).omega_c
        except PhysicsError as exc:
            if row["status"] == "ok":
                row["status"] = type(exc).__name__
        rows.append(row)
    columns = ["n", "ell", "branch", "omega_c_closed", "omega_c_bisect", "residual", "status"]
    return columns, rows, []


def cmd_wavefunction(cfg: RunConfig):
    p, v = cfg.system(), cfg.potential()
    rows, comments = [], [f"measure={cfg.measure}"]
    for q in _states(cfg):
        sol = wavefunction.build_solution(p, v, q, cfg.measure)
        rho, dens = wavefunction.density_grid(sol, cfg.rho_max, cfg.points)
        comments.append(
            f"n={q.n} ell={q.ell} norm={sol.norm:.17g} nu_abs={sol.nu_abs:.17g} "
            f"width={sol.width:.17g}"
        )
        rows.extend(
            dict(n=q.n, ell=q.ell, rho=float(r), density=float(d)) for r, d in zip(rho, dens)
        )
    return ["n", "ell", "rho", "density"], rows, comments


def cmd_validate(cfg: RunConfig):
    tol = cfg.tolerance if cfg.tolerance is not None else validation.ORACLE_TOL
    checks = validation.run_checks(oracle_tolerance=tol)
    rows = [c.record() for c in checks]
    for row in rows:
        for key in ("computed", "expected", "tolerance"):
            if isinstance(row[key], (list, tuple, dict)):
                row[key] = json.dumps(row[key])
    failed = any(c.status == "FAIL" for c in checks)
    columns = ["criterion", "name", "status", "computed", "expected", "tolerance", "detail"]
    return columns, rows, [], checks, failed


COMMANDS = {
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "critical": cmd_critical,
    "wavefunction": cmd_wavefunction,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key = value configuration file")
    common.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                        dest="overrides", help="override one configuration entry")
    common.add_argument("--output", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--measure", choices=("rho", "flat"))
    common.add_argument("--tolerance", type=float, metavar="X")

    parser = argparse.ArgumentParser(
        prog="quadrupole-screw",
        description="Bound states of a magnetic-quadrupole particle in a rotating frame "
                    "around a screw dislocation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "spectrum": "closed-form energies for a range of (n, ell)",
        "sweep": "energies along one parameter axis",
        "critical": "critical angular velocities",
        "wavefunction": "radial probability densities",
        "validate": "run every cross-check and reference comparison",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def _resolve_output(cfg: RunConfig, command: str, fmt: str) -> Path | None:
    if cfg.output:
        return Path(cfg.output)
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory:
        ext = {"csv": "csv", "json-lines": "jsonl", "text": "txt"}[fmt]
        return Path(directory) / f"{command}.{ext}"
    return None


def _write_sidecar(path: Path, command: str, cfg: RunConfig) -> None:
    meta = {
        "command": command,
        "version": __version__,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "config": asdict(cfg),
    }
    Path(str(path) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, args.overrides)
        flags = {k: getattr(args, k) for k in ("output", "format", "measure", "tolerance")}
        cfg = replace(cfg, **{k: val for k, val in flags.items() if val is not None}).validate()
        fmt = cfg.format or ("text" if args.command == "validate" else "csv")
        if fmt == "text" and args.command != "validate":
            raise ConfigError("format 'text' is only available for validate")
        result = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PhysicsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1

    status = 0
    if args.command == "validate":
        columns, rows, comments, checks, failed = result
        status = 1 if failed else 0
    else:
        columns, rows, comments = result

    path = _resolve_output(cfg, args.command, fmt)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        stream = path.open("w", encoding="utf-8", newline="")
    else:
        stream = stdout
    try:
        if fmt == "text":
            for check in checks:
                stream.write(check.line() + "\n")
        else:
            write_table(stream, fmt, columns, rows, comments)
    finally:
        if path is not None:
            stream.close()
    if path is not None:
        _write_sidecar(path, args.command, cfg)
    return status


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the final flush
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)
