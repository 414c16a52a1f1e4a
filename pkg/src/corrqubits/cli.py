"""Command-line front end: evolve / sweep / esd / compare / fig.

Exit codes: 0 success, 2 invalid parameters (including an unphysical
big_gamma without --allow-unphysical), 3 numerical failure mid-run.

All tabular output goes through one CSV format with the fixed header

    t,gamma,big_gamma,omega,method,concurrence,branch_z,branch_w,
    rho11,rho22,rho33,rho44,rho23_re,rho23_im,rho14_re,rho14_im

preceded by '#'-prefixed metadata lines carrying the full run configuration,
so every curve in a file can be recomputed from the file alone.  Floats are
written with 17 significant digits and round-trip exactly.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analytic import XState
from .experiments import (CompareReport, ParameterError, SweepResult,
                          compare_methods, esd_table, figure_dataset,
                          resolve_initial, sweep_concurrence)
from .integrate import NumericalFailureError
from .model import GeneratorConvention, NoiseParams

CSV_HEADER = ("t,gamma,big_gamma,omega,method,concurrence,branch_z,branch_w,"
              "rho11,rho22,rho33,rho44,rho23_re,rho23_im,rho14_re,rho14_im")


@dataclass
class RunConfig:
    """Everything needed to reproduce a run; embedded in every output file."""

    command: str = "evolve"
    initial: str = "bell-phi"
    gamma: float = 1.0
    big_gamma: float = 0.0
    omega: float = 0.0
    method: str = "analytic"
    t_max: float = 2.0
    dt: float = 1e-3
    grid_points: int = 2000
    big_gamma_list: tuple[float, ...] = ()
    seed: int = 0
    n_traj: int = 2000
    convention: str = "calibrated"
    allow_unphysical: bool = False
    out: str = ""

    def to_config_text(self) -> str:
        lines = []
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if f.name == "big_gamma_list":
                v = ",".join(_fmt(x) for x in v)
            elif isinstance(v, float):
                v = _fmt(v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_config_text(text: str) -> "RunConfig":
        values = parse_config_text(text)
        return RunConfig(**values)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _coerce(key: str, raw: str):
    if key not in _FIELD_TYPES:
        raise ParameterError(f"unknown config key {key!r}")
    raw = raw.strip()
    if key in ("command", "initial", "method", "convention", "out"):
        return raw
    if key in ("seed", "n_traj", "grid_points"):
        return int(raw)
    if key == "allow_unphysical":
        if raw.lower() in ("true", "1", "yes"):
            return True
        if raw.lower() in ("false", "0", "no"):
            return False
        raise ParameterError(f"bad boolean for {key}: {raw!r}")
    if key == "big_gamma_list":
        if not raw:
            return ()
        return tuple(float(tok) for tok in raw.split(","))
    return float(raw)


def parse_config_text(text: str) -> dict:
    """Flat 'key = value' lines; blank lines and '#' comments ignored."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParameterError(f"config line {lineno} is not 'key = value': {line!r}")
        key, _, raw = line.partition("=")
        out[key.strip()] = _coerce(key.strip(), raw)
    return out


def parse_initial_spec(spec: str) -> str | XState:
    """bell-phi | bell-psi | x-crossover | x-state:a,b,c,d,z,w | file path."""
    spec = spec.strip()
    if spec.startswith("x-state:"):
        parts = spec[len("x-state:"):].split(",")
        if len(parts) != 6:
            raise ParameterError("x-state spec needs six comma-separated values")
        x = XState(*(float(p) for p in parts))
        x.validate(trace_tol=1e-9)
        return x
    if spec in ("bell-phi", "bell-psi", "x-crossover"):
        return spec
    path = Path(spec)
    if path.exists():
        values = {}
        for line in path.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, raw = line.partition("=")
            values[key.strip()] = float(raw)
        missing = {"a", "b", "c", "d", "z", "w"} - set(values)
        if missing:
            raise ParameterError(f"initial-state file lacks keys: {sorted(missing)}")
        x = XState(values["a"], values["b"], values["c"], values["d"],
                   values["z"], values["w"])
        x.validate(trace_tol=1e-9)
        return x
    raise ParameterError(f"unknown initial state {spec!r} (not a name, "
                         "x-state:... spec, or existing file)")


def _metadata_lines(cfg: RunConfig) -> list[str]:
    return ["# corrqubits run configuration"] + \
           [f"# {line}" for line in cfg.to_config_text().splitlines()]


def write_csv(result: SweepResult, path, cfg: RunConfig) -> None:
    """Serialize a sweep (or single evolution) to the canonical CSV format."""
    lines = _metadata_lines(cfg)
    lines.append(CSV_HEADER)
    for entry in result.entries:
        for i, t in enumerate(result.times):
            st = entry.states[i]
            row = [
                _fmt(t), _fmt(result.gamma), _fmt(entry.big_gamma),
                _fmt(result.omega), result.method,
                _fmt(entry.concurrence[i]), _fmt(entry.branch_z[i]),
                _fmt(entry.branch_w[i]),
                _fmt(st[0, 0].real), _fmt(st[1, 1].real),
                _fmt(st[2, 2].real), _fmt(st[3, 3].real),
                _fmt(st[1, 2].real), _fmt(st[1, 2].imag),
                _fmt(st[0, 3].real), _fmt(st[0, 3].imag),
            ]
            lines.append(",".join(row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_csv(path):
    """Parse the canonical CSV back into (metadata dict, column arrays)."""
    meta = {}
    rows = []
    header = None
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, raw = body.partition("=")
                meta[key.strip()] = raw.strip()
            continue
        if header is None:
            if line != CSV_HEADER:
                raise ParameterError(f"line {lineno}: unexpected header {line!r}")
            header = line.split(",")
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise ParameterError(f"line {lineno}: expected {len(header)} fields")
        rows.append(parts)
    if header is None:
        raise ParameterError("CSV contains no header")
    cols = {}
    for j, name in enumerate(header):
        if name == "method":
            cols[name] = np.array([r[j] for r in rows])
        else:
            cols[name] = np.array([float(r[j]) for r in rows])
    return meta, cols


def write_compare_json(report: CompareReport, path, cfg: RunConfig) -> None:
    payload = {
        "run_config": {f.name: getattr(cfg, f.name) if f.name != "big_gamma_list"
                       else list(getattr(cfg, f.name))
                       for f in dataclasses.fields(RunConfig)},
        "methods": list(report.methods),
        "pairs": [
            {"method_pair": list(p.method_pair),
             "max_abs_deviation": p.max_abs_deviation,
             "time_of_max": p.time_of_max}
            for p in report.pairs
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def _add_common(sub):
    sub.add_argument("--config", help="flat key = value config file; "
                                      "command-line flags override it")
    sub.add_argument("--initial", default="bell-phi",
                     help="bell-phi | bell-psi | x-crossover | "
                          "x-state:a,b,c,d,z,w | path")
    sub.add_argument("--gamma", type=float, default=1.0)
    sub.add_argument("--big-gamma", dest="big_gamma", type=float, default=0.0)
    sub.add_argument("--omega", type=float, default=0.0)
    sub.add_argument("--method", default="analytic",
                     choices=["analytic", "secular-rk4", "full-rk4",
                              "trajectories"])
    sub.add_argument("--t-max", dest="t_max", type=float, default=2.0)
    sub.add_argument("--dt", type=float, default=1e-3)
    sub.add_argument("--grid-points", dest="grid_points", type=int, default=2000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--n-traj", dest="n_traj", type=int, default=2000)
    sub.add_argument("--convention", default="calibrated",
                     choices=["calibrated", "doubled-cross"])
    sub.add_argument("--allow-unphysical", dest="allow_unphysical",
                     action="store_true", default=False)
    sub.add_argument("-o", "--out", default="")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrqubits",
        description="Two-qubit entanglement dynamics under correlated noise")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, desc in (
            ("evolve", "single run: concurrence and state series"),
            ("sweep", "concurrence series for a list of big-gamma values"),
            ("esd", "entanglement death/revival times"),
            ("compare", "pairwise deviations between dynamics routes"),
    ):
        sub = subs.add_parser(name, help=desc)
        _add_common(sub)
        if name == "sweep":
            sub.add_argument("--big-gamma-list", dest="big_gamma_list",
                             default="0,0.25,0.5,0.75,1")
        if name == "compare":
            sub.add_argument("--methods", default="analytic,secular-rk4,full-rk4")
    fig = subs.add_parser("fig", help="bundled figure datasets")
    fig.add_argument("figure", type=int, choices=[2, 3, 4])
    _add_common(fig)
    return parser


def _apply_config_file(argv: list[str], parser: argparse.ArgumentParser):
    if "--config" in argv:
        idx = argv.index("--config")
        if idx + 1 >= len(argv):
            raise ParameterError("--config needs a path")
        path = Path(argv[idx + 1])
        if not path.exists():
            raise ParameterError(f"config file not found: {path}")
        values = parse_config_text(path.read_text())
        values.pop("command", None)
        values.pop("out", None)
        if "big_gamma_list" in values:
            values["big_gamma_list"] = ",".join(
                _fmt(x) for x in values["big_gamma_list"])
        parser.set_defaults(**values)


def _run_config_from_args(args) -> RunConfig:
    bg_list = ()
    if getattr(args, "big_gamma_list", None):
        raw = args.big_gamma_list
        bg_list = tuple(float(tok) for tok in str(raw).split(",") if tok)
    return RunConfig(
        command=args.command, initial=args.initial, gamma=args.gamma,
        big_gamma=args.big_gamma, omega=args.omega, method=args.method,
        t_max=args.t_max, dt=args.dt, grid_points=args.grid_points,
        big_gamma_list=bg_list, seed=args.seed, n_traj=args.n_traj,
        convention=args.convention, allow_unphysical=args.allow_unphysical,
        out=args.out)


def _dispatch(args) -> int:
    cfg = _run_config_from_args(args)
    convention = GeneratorConvention(cfg.convention)
    if cfg.gamma < 0:
        raise ParameterError("gamma must be non-negative")
    initial = parse_initial_spec(cfg.initial)
    t_grid = np.linspace(0.0, cfg.t_max, cfg.grid_points)

    if args.command in ("evolve", "sweep"):
        bgs = cfg.big_gamma_list if args.command == "sweep" else (cfg.big_gamma,)
        result = sweep_concurrence(
            initial, cfg.gamma, list(bgs), t_grid, cfg.method,
            omega=cfg.omega, convention=convention, dt=cfg.dt,
            n_traj=cfg.n_traj, seed=cfg.seed,
            allow_unphysical=cfg.allow_unphysical)
        out = cfg.out or f"{args.command}.csv"
        write_csv(result, out, dataclasses.replace(cfg, out=out))
        print(f"wrote {out}")
        return 0

    if args.command == "esd":
        bgs = cfg.big_gamma_list or (cfg.big_gamma,)
        rows = esd_table(initial, cfg.gamma, list(bgs), t_max=cfg.t_max,
                         allow_unphysical=cfg.allow_unphysical)
        for row in rows:
            deaths = ", ".join(f"{t:.5f}" for t in row.deaths) or "none"
            line = f"big_gamma={_fmt(row.big_gamma)}: death at t = {deaths}"
            if row.revivals:
                line += "; revival at t = " + ", ".join(
                    f"{t:.5f}" for t in row.revivals)
            print(line)
        if cfg.out:
            lines = _metadata_lines(cfg) + ["big_gamma,event,t"]
            for row in rows:
                for t in row.deaths:
                    lines.append(f"{_fmt(row.big_gamma)},death,{_fmt(t)}")
                for t in row.revivals:
                    lines.append(f"{_fmt(row.big_gamma)},revival,{_fmt(t)}")
            Path(cfg.out).write_text("\n".join(lines) + "\n")
        return 0

    if args.command == "compare":
        methods = tuple(tok for tok in args.methods.split(",") if tok)
        params = NoiseParams(gamma_a=cfg.gamma, gamma_b=cfg.gamma,
                             big_gamma=cfg.big_gamma, omega=cfg.omega)
        report = compare_methods(initial, params, t_grid, methods,
                                 convention=convention, dt=cfg.dt,
                                 n_traj=cfg.n_traj, seed=cfg.seed,
                                 allow_unphysical=cfg.allow_unphysical)
        out = cfg.out or "compare.json"
        write_compare_json(report, out, dataclasses.replace(cfg, out=out))
        worst = report.worst()
        print(f"wrote {out} (worst pair {worst.method_pair}: "
              f"{worst.max_abs_deviation:.3e} at t={worst.time_of_max:.4f})")
        return 0

    if args.command == "fig":
        result = figure_dataset(args.figure, method=cfg.method,
                                gamma=cfg.gamma, omega=cfg.omega, dt=cfg.dt,
                                n_traj=cfg.n_traj, seed=cfg.seed,
                                grid_points=cfg.grid_points)
        out = cfg.out or f"fig{args.figure}.csv"
        cfg2 = dataclasses.replace(
            cfg, command="fig", initial=result.initial_label, out=out,
            big_gamma_list=tuple(e.big_gamma for e in result.entries))
        write_csv(result, out, cfg2)
        print(f"wrote {out}")
        return 0

    raise ParameterError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _apply_config_file(argv, parser)
        args = parser.parse_args(argv)
        return _dispatch(args)
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalFailureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
