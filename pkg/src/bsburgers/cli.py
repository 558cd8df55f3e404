"""Command-line front end: single runs, table sweeps and problem listing.

Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import __version__
from .basis import UniformGrid
from .metrics import error_report
from .oracle import cn_fd_run
from .plotting import emit_plot
from .problems import PROBLEM_KINDS, FrontParams, make_problem
from .report import format_table, write_profile, write_summary_csv
from .stepper import INIT_STRATEGIES, L2_WEIGHTINGS, MODES, SolverConfig, SolverError, run

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4

DEFAULT_TIMES = {"shock": (1.0, 3.25), "front": (0.0, 1.2), "constant": (0.0, 1.0)}


class ConfigError(ValueError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass
class RunManifest:
    problem: str = "shock"
    nu: float = 0.01
    solver_nu_factor: float = 1.0
    h: float = 0.01
    dt: float = 0.01
    t_start: float | None = None
    t_end: float | None = None
    mode: str = "summed"
    init: str = "pde-derivative"
    inner_iters: int = 2
    relaxation: float = 1.0
    l2_weighting: str = "unweighted"
    sample_times: list | None = None
    alpha: float = 0.4
    mu: float = 0.6
    gamma: float = 0.125
    constant: float = 1.0
    out: str = "out"
    profiles: bool = True
    errors: bool = True
    plots: bool = False
    oracle: bool = False
    extra: dict = field(default_factory=dict)

    def problem_spec(self):
        return make_problem(
            self.problem, self.nu, FrontParams(self.alpha, self.mu, self.gamma), self.constant
        )

    def solver_config(self):
        return SolverConfig(
            viscosity=self.solver_nu_factor * self.nu,
            h=self.h,
            dt=self.dt,
            t_start=self.t_start,
            t_end=self.t_end,
            inner_iterations=self.inner_iters,
            mode=self.mode,
            init_strategy=self.init,
            l2_weighting=self.l2_weighting,
            relaxation=self.relaxation,
        )

    def tag(self):
        return f"{self.problem}_nu{self.nu:g}_h{self.h:g}_dt{self.dt:g}"


def _float_list(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).replace(",", " ").split()]


CONFIG_KEYS = {
    "problem": str, "nu": float, "solver_nu_factor": float, "h": float, "dt": float,
    "t_start": float, "t_end": float, "mode": str, "init": str, "inner_iters": int,
    "relaxation": float, "l2_weighting": str, "sample_times": _float_list,
    "alpha": float, "mu": float, "gamma": float, "constant": float, "out": str,
    "profiles": bool, "errors": bool, "plots": bool, "oracle": bool,
}


def load_config_file(path):
    """Read a flat TOML file of manifest keys (dashes or underscores)."""
    import tomli

    try:
        with open(path, "rb") as fh:
            raw = tomli.load(fh)
    except FileNotFoundError:
        raise ConfigError("config", f"file not found: {path}") from None
    except tomli.TOMLDecodeError as exc:
        raise ConfigError("config", f"cannot parse {path}: {exc}") from None
    values = {}
    for key, value in raw.items():
        name = key.replace("-", "_")
        if name not in CONFIG_KEYS:
            raise ConfigError(key, "unknown key")
        if isinstance(value, dict):
            raise ConfigError(key, "nested tables are not supported")
        values[name] = value
    return values


def _coerce(values):
    out = {}
    for key, value in values.items():
        conv = CONFIG_KEYS[key]
        try:
            if conv is bool and isinstance(value, str):
                value = value.lower() in ("1", "true", "yes", "on")
            out[key] = conv(value)
        except (TypeError, ValueError):
            raise ConfigError(key, f"invalid value {value!r}") from None
    return out


def validate(manifest):
    """Fill problem-dependent defaults and check ranges; returns a new manifest."""
    m = manifest
    if m.problem not in PROBLEM_KINDS:
        raise ConfigError("problem", f"unknown problem {m.problem!r}")
    start, end = DEFAULT_TIMES[m.problem]
    m = replace(
        m,
        t_start=start if m.t_start is None else m.t_start,
        t_end=end if m.t_end is None else m.t_end,
    )
    for key in ("nu", "h", "dt"):
        value = getattr(m, key)
        if not (np.isfinite(value) and value > 0):
            raise ConfigError(key, f"must be positive, got {value!r}")
    if not m.solver_nu_factor > 0:
        raise ConfigError("solver_nu_factor", f"must be positive, got {m.solver_nu_factor!r}")
    if not m.t_end > m.t_start:
        raise ConfigError("t_end", f"must exceed t_start={m.t_start!r}, got {m.t_end!r}")
    if m.mode not in MODES:
        raise ConfigError("mode", f"must be one of {MODES}")
    if m.init not in INIT_STRATEGIES:
        raise ConfigError("init", f"must be one of {INIT_STRATEGIES}")
    if m.l2_weighting not in L2_WEIGHTINGS:
        raise ConfigError("l2_weighting", f"must be one of {L2_WEIGHTINGS}")
    if m.inner_iters < 1:
        raise ConfigError("inner_iters", "must be at least 1")
    if not 0 < m.relaxation <= 1:
        raise ConfigError("relaxation", "must lie in (0, 1]")
    if m.problem == "front" and not (m.alpha > 0 and m.mu > 0):
        raise ConfigError("alpha", "front parameters alpha and mu must be positive")
    try:
        cfg = m.solver_config()
    except ValueError as exc:
        key = "dt" if "multiple of dt" in str(exc) else "h"
        raise ConfigError(key, str(exc)) from None
    try:
        a, b = m.problem_spec().domain
        UniformGrid.over(a, b, m.h)
    except ValueError as exc:
        raise ConfigError("h", str(exc)) from None
    times = [m.t_end] if m.sample_times is None else list(m.sample_times)
    if times != sorted(times):
        raise ConfigError("sample_times", "must be sorted")
    for t in times:
        try:
            cfg.step_of(t)
        except ValueError as exc:
            raise ConfigError("sample_times", str(exc)) from None
    return replace(m, sample_times=times)


def _common_flags(p):
    p.add_argument("--config", help="flat TOML file of manifest keys; flags override it")
    p.add_argument("--problem", choices=sorted(PROBLEM_KINDS))
    p.add_argument("--nu", type=float, help="viscosity of the problem")
    p.add_argument("--solver-nu-factor", type=float,
                   help="solver viscosity as a multiple of --nu (default 1); the exact solution keeps --nu")
    p.add_argument("--t-start", type=float)
    p.add_argument("--t-end", type=float)
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--init", choices=INIT_STRATEGIES)
    p.add_argument("--inner-iters", type=int)
    p.add_argument("--relaxation", type=float, help="lagged-estimate update weight, 1 = Picard")
    p.add_argument("--l2-weighting", choices=L2_WEIGHTINGS)
    p.add_argument("--alpha", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--constant", type=float)
    p.add_argument("--out")
    p.add_argument("--oracle", action="store_true", default=None, help="also run the CN-FD oracle")
    p.add_argument("--plots", action="store_true", default=None, help="write SVG figures")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bsburgers", description="Space-time B-spline collocation for Burgers' equation."
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="single run")
    _common_flags(solve)
    solve.add_argument("--h", type=float)
    solve.add_argument("--dt", type=float)
    solve.add_argument("--sample-times", type=_float_list, help="comma-separated times")

    sweep = sub.add_parser("sweep", help="reproduce an error table over h = dt and nu")
    _common_flags(sweep)
    sweep.add_argument("--nus", type=_float_list, default=None, help="comma-separated viscosities")
    sweep.add_argument("--hs", type=_float_list, default=None, help="comma-separated h = dt values")
    sweep.add_argument("--sample-time", type=float, default=None)
    sweep.add_argument("--jobs", type=int, default=1)

    sub.add_parser("list-problems", help="show the built-in problems")
    return parser


FLAG_KEYS = (
    "problem", "nu", "solver_nu_factor", "h", "dt", "t_start", "t_end", "mode", "init", "inner_iters",
    "relaxation", "l2_weighting", "sample_times", "alpha", "mu", "gamma", "constant", "out",
    "oracle", "plots",
)


def parse_config(args):
    """Merge config file and flags into a validated :class:`RunManifest`."""
    if isinstance(args, (list, tuple)):
        args = build_parser().parse_args(args)
    values = load_config_file(args.config) if getattr(args, "config", None) else {}
    for key in FLAG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            values[key] = value
    return validate(RunManifest(**_coerce(values)))


def _metadata(manifest, cfg, files, reports, wall, notes):
    return {
        "manifest": {k: v for k, v in asdict(manifest).items() if k != "extra"},
        "solver_config": asdict(cfg),
        "versions": {
            "bsburgers": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
        "wall_time_s": wall,
        "files": files,
        "reports": reports,
        "notes": notes,
    }


def run_experiment(manifest, write_summary=True):
    """Run one manifest and write its outputs; returns the metadata dict."""
    problem = manifest.problem_spec()
    cfg = manifest.solver_config()
    out = manifest.out
    os.makedirs(out, exist_ok=True)
    started = time.perf_counter()

    samples = run(problem, cfg, manifest.sample_times)
    rows, files, notes = [], [], []
    base = dict(problem=manifest.problem, nu=manifest.nu, h=manifest.h, dt=manifest.dt)

    def score(solver, sample_list, prefix):
        for s in sample_list:
            exact = np.asarray(problem.exact(s.x, s.time), dtype=float)
            report = error_report(s.u, exact, s.x, manifest.h, s.time)
            rows.append(dict(base, solver=solver, **report.as_dict()))
            if manifest.profiles:
                path = os.path.join(out, f"{prefix}_{manifest.tag()}_t{s.time:g}.csv")
                write_profile(path, s.x, s.u, exact)
                files.append(path)

    score("spline", samples, "profile")
    if manifest.oracle:
        fd = cn_fd_run(problem, manifest.h, manifest.dt, manifest.t_end, manifest.inner_iters,
                       t_start=manifest.t_start)
        by_time = {round((p.time - manifest.t_start) / manifest.dt): p for p in fd}
        picked = [by_time[round((t - manifest.t_start) / manifest.dt)] for t in manifest.sample_times]
        score("cn-fd", picked, "oracle")

    if manifest.plots:
        path = os.path.join(out, f"solution_{manifest.tag()}.svg")
        if emit_plot(samples, problem.exact, path, title=f"{manifest.problem}, nu = {manifest.nu:g}"):
            files.append(path)
        else:
            notes.append("plot omitted: no sample times")

    if write_summary and manifest.errors:
        files.append(write_summary_csv(os.path.join(out, "summary.csv"), rows))
        path = os.path.join(out, "summary.txt")
        with open(path, "w") as fh:
            fh.write(format_table(rows))
        files.append(path)

    wall = time.perf_counter() - started
    meta = _metadata(manifest, cfg, files, rows, wall, notes)
    meta_path = os.path.join(out, f"run_{manifest.tag()}.json")
    with open(meta_path, "w") as fh:
        json.dump(meta, fh, indent=2)
    meta["metadata_path"] = meta_path
    return meta


def _sweep_one(manifest):
    return run_experiment(manifest, write_summary=False)


def run_sweep(manifest, nus, hs, jobs=1):
    """Run every (nu, h = dt) pair and write the combined summary table."""
    runs = [replace(manifest, nu=nu, h=h, dt=h) for nu in nus for h in hs]
    runs = [validate(r) for r in runs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            metas = list(pool.map(_sweep_one, runs))
    else:
        metas = [_sweep_one(r) for r in runs]
    rows = [row for meta in metas for row in meta["reports"]]
    out = manifest.out
    summary_csv = write_summary_csv(os.path.join(out, "summary.csv"), rows)
    summary_txt = os.path.join(out, "summary.txt")
    with open(summary_txt, "w") as fh:
        fh.write(format_table(rows, title=f"{manifest.problem}: errors and peak values"))
    return rows, [summary_csv, summary_txt] + [m["metadata_path"] for m in metas]


SWEEP_DEFAULTS = {
    "shock": ((0.01, 0.005), (0.01, 0.005, 0.001)),
    "front": ((0.01, 0.005), (0.01, 0.005, 0.001)),
    "constant": ((0.01,), (0.01, 0.005)),
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    if args.command == "list-problems":
        for name, text in PROBLEM_KINDS.items():
            print(f"{name:10s} {text}")
        return EXIT_OK

    try:
        if args.command == "sweep":
            kind = args.problem or "shock"
            nus, hs = SWEEP_DEFAULTS[kind]
            args.problem = kind
            args.sample_times = [args.sample_time] if args.sample_time is not None else None
            manifest = parse_config(args)
            rows, files = run_sweep(manifest, args.nus or nus, args.hs or hs, args.jobs)
            with open(files[1]) as fh:
                print(fh.read(), end="")
        else:
            manifest = parse_config(args)
            meta = run_experiment(manifest)
            print(format_table(meta["reports"]), end="")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
