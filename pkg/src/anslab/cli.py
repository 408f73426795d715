"""Command-line surface over the solver, the suite, and the experiments.

Five subcommands: ``simulate`` runs a configured solve and writes the
diagnostics CSV, ``verify`` runs the inequality suite, ``fit`` fits one CSV
column, ``experiment`` runs a shipped preset end to end, and ``report``
prints the verdicts stored in an experiment report.

Exit codes follow the verdict vocabulary: 0 when everything graded came out
consistent, 2 when anything was inconclusive, 3 when a violation-candidate
is present, 1 for errors (bad flags, unknown presets, unreadable files).
For ``verify``, a failed certified case maps to 3 (counterexample
candidate) and a failed negative control maps to 2 (the harness could not
see the failure it was built to see, so nothing was certified).
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from pathlib import Path

from .core import Grid2D
from .experiments import (
    SCHEMA_VERSION,
    STATUS_CONSISTENT,
    STATUS_INCONCLUSIVE,
    STATUS_VIOLATION,
    emit_report,
    get_preset,
    preset_names,
    run_experiment,
)
from .fitting import fit_power_law
from .inequalities import default_cases, run_suite, suite_report_json
from .operators import ModelParams
from .solver import (
    SolverConfig,
    init_from_preset,
    read_diagnostics_csv,
    run,
    write_diagnostics_csv,
)

__all__ = ["main", "build_parser"]

_EXIT = {STATUS_CONSISTENT: 0, STATUS_INCONCLUSIVE: 2, STATUS_VIOLATION: 3}


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exit code 1, not 2."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise _CliError(message)


def _read_config(path: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    if not cp.read(path):
        raise ValueError(f"cannot read config file {path!r}")
    return cp


def _params_from_config(cp: configparser.ConfigParser) -> ModelParams:
    return ModelParams(
        nu=cp.getfloat("params", "nu"),
        s=cp.getfloat("params", "s"),
        sigma=cp.getfloat("params", "sigma", fallback=0.4),
        gamma=cp.getfloat("params", "gamma", fallback=0.0),
        k=cp.getint("params", "k", fallback=3),
    )


def _cmd_simulate(args: argparse.Namespace) -> int:
    cp = _read_config(args.config)
    grid = Grid2D(
        cp.getint("grid", "n1"),
        cp.getint("grid", "n2"),
        cp.getfloat("grid", "l1"),
        cp.getfloat("grid", "l2"),
    )
    params = _params_from_config(cp)
    dt_raw = cp.get("solver", "dt").strip()
    config = SolverConfig(
        dt="auto" if dt_raw == "auto" else float(dt_raw),
        t_end=cp.getfloat("solver", "t_end"),
        cfl=cp.getfloat("solver", "cfl", fallback=0.4),
        diag_stride=cp.getint("solver", "diag_stride", fallback=1),
    )
    seed = cp.getint("init", "seed", fallback=None)
    state = init_from_preset(
        cp.get("init", "preset"),
        grid,
        params,
        cp.getfloat("init", "eps"),
        seed,
    )
    result = run(state, config)
    out_csv = cp.get("output", "csv", fallback="simulation-series.csv")
    write_diagnostics_csv(result.records, out_csv)
    print(f"wrote {len(result.records)} records to {out_csv}")
    if result.aborted:
        print(f"aborted: {result.abort_reason}")
    for flag in result.flags:
        print(f"flag: {flag}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    cp = _read_config(args.config)
    resolutions = tuple(
        int(tok) for tok in cp.get("suite", "resolutions", fallback="64, 128").split(",")
    )
    report = run_suite(
        seed=cp.getint("suite", "seed", fallback=0),
        n_samples=cp.getint("suite", "samples", fallback=25),
        resolutions=resolutions,
        cases=default_cases(
            include_controls=cp.getboolean("suite", "include_controls", fallback=True)
        ),
    )
    for summary in report.summaries:
        tag = "ok  " if summary.passed else "FAIL"
        if summary.case.negative_control:
            maxes = " -> ".join(f"{lv.max_ratio:.4g}" for lv in summary.levels)
            print(f"{tag} {summary.case.label()}  level maxes {maxes}")
        else:
            print(
                f"{tag} {summary.case.label()}  max={summary.max_ratio:.4g} "
                f"median={summary.median_ratio:.4g} drift={100 * summary.drift:.2f}%"
            )
    out = cp.get("suite", "json", fallback=None)
    if out:
        Path(out).write_text(suite_report_json(report), encoding="ascii")
        print(f"wrote {out}")
    certified_failed = any(
        not s.passed and not s.case.negative_control for s in report.summaries
    )
    controls_failed = any(
        not s.passed and s.case.negative_control for s in report.summaries
    )
    if certified_failed:
        return 3
    if controls_failed:
        return 2
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    times, columns = read_diagnostics_csv(args.csv)
    if args.key not in columns:
        raise ValueError(
            f"column {args.key!r} not found in {args.csv}; "
            f"available: {', '.join(sorted(columns))}"
        )
    window = None
    if args.window is not None:
        parts = args.window.split(",")
        if len(parts) != 2:
            raise ValueError(f"--window wants 'a,b', got {args.window!r}")
        window = (float(parts[0]), float(parts[1]))
    fit = fit_power_law(times, columns[args.key], window, key=args.key)
    print(f"{fit.exponent:.6g}")
    print(
        f"# key={fit.key} stderr={fit.stderr:.3g} n_points={fit.n_points} "
        f"window=[{fit.window[0]:g}, {fit.window[1]:g}]",
        file=sys.stderr,
    )
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    preset = get_preset(args.name)
    bundle = run_experiment(preset)
    paths = emit_report(bundle, args.out)
    for verdict in bundle.verdicts:
        print(f"{verdict.status:20s} {verdict.key}: {verdict.note}")
    if bundle.aborted:
        print(f"aborted: {bundle.abort_reason}")
    print(f"overall: {bundle.overall()}")
    for path in paths.values():
        print(f"wrote {path}")
    return _EXIT[bundle.overall()]


def _cmd_report(args: argparse.Namespace) -> int:
    path = Path(args.bundle)
    if path.is_dir():
        matches = sorted(path.glob("*-report.json"))
        if len(matches) != 1:
            raise ValueError(
                f"{path} holds {len(matches)} report files; point at one of them"
            )
        path = matches[0]
    doc = json.loads(path.read_text(encoding="ascii"))
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"{path} has schema_version {doc.get('schema_version')!r}; "
            f"this build reads {SCHEMA_VERSION}"
        )
    print(f"preset {doc['preset']} (regime {doc['regime']})")
    params = doc["params"]
    print(
        "params "
        + " ".join(f"{key}={params[key]}" for key in ("nu", "s", "sigma", "gamma", "k"))
    )
    if doc["window"] is not None:
        print(f"window [{doc['window'][0]:g}, {doc['window'][1]:g}]")
    for verdict in doc["verdicts"]:
        print(f"{verdict['status']:20s} {verdict['key']}: {verdict['note']}")
    if doc["aborted"]:
        print(f"aborted: {doc['abort_reason']}")
    print(f"overall: {doc['overall']}")
    overall = doc["overall"]
    if overall not in _EXIT:
        raise ValueError(f"report carries unknown overall status {overall!r}")
    return _EXIT[overall]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="anslab",
        description=(
            "pseudo-spectral laboratory for anisotropic dissipation: "
            "simulate, verify inequalities, fit decay rates, run experiments"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("simulate", help="run a configured solve, write the CSV")
    p.add_argument("config", help="INI file with [grid] [params] [solver] [init] [output]")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("verify", help="run the inequality certification suite")
    p.add_argument("config", help="INI file with a [suite] section")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fit", help="fit a power law to one CSV column")
    p.add_argument("csv", help="diagnostics CSV (solver format)")
    p.add_argument("--key", required=True, help="column to fit")
    p.add_argument("--window", default=None, help="fit window 'a,b' (default: last decade)")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("experiment", help="run a shipped preset and grade it")
    p.add_argument("name", help="preset name: " + ", ".join(preset_names()))
    p.add_argument("--out", default=".", help="directory for the three artifacts")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("report", help="print the verdicts stored in a report")
    p.add_argument("bundle", help="report JSON path, or a directory holding one")
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, configparser.Error) as err:
        message = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f"error: {message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
