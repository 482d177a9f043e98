"""Command-line entry point.

Usage::

    rodsphere simulate --scenario FILE [--out FILE] [--convention verbatim|consistent]
    rodsphere min-friction --scenario FILE
    rodsphere envelope --scenario FILE [--out FILE]
    rodsphere verify [--seed N] [--samples N] [--convention ...]
    rodsphere sweep --scenario FILE [--out FILE]

Exit codes: 0 success, 2 usage or parse error, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import logging
import sys
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .analysis import force_vs_geometry, run_sweep, sweep_from_scenario, verify_reductions
from .integrator import IntegrationError, integrate
from .leverage import UnreachableGuarantee, min_friction_for_forward
from .scenario import Scenario, ScenarioError, load_scenario
from .types import AccelTriple, LeverArmConvention, ParameterError

log = logging.getLogger("rodsphere")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

TRAJECTORY_COLUMNS = ("t", "zeta", "omega", "x", "v_h", "z", "v_v", "a_v", "a_h", "omega_dot")


class UsageError(Exception):
    pass


def fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


class CsvOut:
    """RFC 4180 CSV with ``#`` metadata lines, UTF-8 and LF endings."""

    def __init__(self, stream):
        self.stream = stream
        self.writer = csv.writer(stream, lineterminator="\n")

    def meta(self, items: Iterable[tuple[str, object]]) -> None:
        for key, value in items:
            self.stream.write(f"# {key}={fmt(value)}\n")

    def header(self, columns: Sequence[str]) -> None:
        self.writer.writerow(columns)

    def row(self, values: Sequence) -> None:
        self.writer.writerow([fmt(v) for v in values])


@contextlib.contextmanager
def open_output(path: str | None):
    if path is None:
        yield CsvOut(sys.stdout)
        return
    buf = io.StringIO()
    yield CsvOut(buf)
    Path(path).write_text(buf.getvalue(), encoding="utf-8", newline="\n")


def _scenario(args) -> Scenario:
    if not args.scenario:
        raise UsageError("--scenario is required for this command")
    sc = load_scenario(args.scenario)
    if args.convention:
        sc = sc.replace(convention=LeverArmConvention.parse(args.convention))
    return sc


def _out_path(args, sc: Scenario | None = None) -> str | None:
    if args.out:
        return args.out
    return sc.output if sc is not None else None


def cmd_simulate(args) -> int:
    sc = _scenario(args)
    rhs = sc.rhs()
    code = EXIT_OK
    try:
        traj = integrate(rhs, sc.initial, sc.settings)
    except IntegrationError as exc:
        log.error("integration aborted: %s", exc)
        traj, code = exc.trajectory, EXIT_NUMERIC
    with open_output(_out_path(args, sc)) as out:
        out.meta([("command", "simulate"), ("version", __version__)])
        out.meta(sc.metadata())
        out.meta([("samples", len(traj))])
        if code != EXIT_OK:
            out.meta([("status", "aborted")])
        out.header(TRAJECTORY_COLUMNS)
        for state in traj:
            acc: AccelTriple = rhs(state)
            out.row(state.as_tuple() + acc.as_tuple())
    return code


def cmd_min_friction(args) -> int:
    sc = _scenario(args)
    try:
        mu = min_friction_for_forward(sc.sphere, sc.pole)
    except UnreachableGuarantee as exc:
        log.error("%s", exc)
        return EXIT_NUMERIC
    line = f"{mu:.6f}"
    if args.out:
        Path(args.out).write_text(line + "\n", encoding="utf-8", newline="\n")
    print(line)
    return EXIT_OK


def cmd_envelope(args) -> int:
    sc = _scenario(args)
    rows = force_vs_geometry(sc)
    with open_output(_out_path(args, sc)) as out:
        out.meta([("command", "envelope"), ("version", __version__)])
        out.meta(sc.metadata())
        out.meta([("A", sc.drive_constant)])
        out.header(("config", "l_max", "l_dot_max", "zeta", "omega_force", "omega_geom",
                    "limited_by", "binding"))
        for r in rows:
            out.row((r.config, r.l_max, r.l_dot_max, r.zeta, r.omega_force, r.omega_geom,
                     r.limited_by, r.binding))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.samples is not None and args.samples < 1:
        raise UsageError("--samples must be >= 1")
    report = verify_reductions(samples=args.samples or 1000, seed=args.seed,
                               convention=args.convention or "consistent")
    with open_output(args.out) as out:
        out.meta([("command", "verify"), ("version", __version__), ("seed", report.seed),
                  ("samples", report.samples), ("convention", report.convention.value)])
        out.header(("check", "status", "max_error", "samples", "counterexample"))
        for c in report.checks:
            cex = ""
            if c.counterexample:
                cex = ";".join(f"{k}={fmt(v)}" for k, v in c.counterexample.items())
            out.row((c.name, c.status, c.max_error, c.samples, cex))
    return EXIT_OK if report.ok else EXIT_NUMERIC


def cmd_sweep(args) -> int:
    sc = _scenario(args)
    spec = sweep_from_scenario(sc)
    rows = run_sweep(spec)
    with open_output(_out_path(args, sc)) as out:
        out.meta([("command", "sweep"), ("version", __version__)])
        out.meta(sc.metadata())
        out.meta([("sweep.parameter", spec.parameter), ("sweep.start", spec.start),
                  ("sweep.stop", spec.stop), ("sweep.count", spec.count)])
        out.header((spec.parameter, "zeta", "a_v", "a_h", "omega_dot"))
        for r in rows:
            out.row((r.value, r.zeta, r.a_v, r.a_h, r.omega_dot))
    return EXIT_OK


COMMANDS = {
    "simulate": (cmd_simulate, "integrate a scenario and write its trajectory as CSV"),
    "min-friction": (cmd_min_friction, "smallest mu_rs guaranteeing forward leverage motion"),
    "envelope": (cmd_envelope, "force-driven rate against the pole-geometry envelope"),
    "verify": (cmd_verify, "check the limit cases of the variable-friction push model"),
    "sweep": (cmd_sweep, "evaluate accelerations over a parameter grid"),
}


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH", help="scenario file (TOML)")
    common.add_argument("--out", metavar="PATH", help="output file (default: scenario output.path or stdout)")
    common.add_argument("--seed", type=_seed, default=0, help="random seed for verify (default 0)")
    common.add_argument("--samples", type=int, default=None, help="sample count for verify (default 1000)")
    common.add_argument("--convention", choices=("verbatim", "consistent"),
                        help="lever-arm convention for the variable-friction push model")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="rodsphere", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (fn, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=fn)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ScenarioError, ParameterError, UsageError) as exc:
        print(f"rodsphere {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
