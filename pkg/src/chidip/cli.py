"""Command-line front end: separation sweeps, excitation dynamics, Lamb shift.

Three subcommands, all writing machine-readable rows to stdout (errors go to
stderr, never stdout):

    chidip sweep    — collective rates/shifts + interaction energy vs x
    chidip dynamics — populations and interaction energy vs time at fixed x
    chidip lamb     — the renormalized single-dipole shift for a given cutoff

Scenario presets fix the dipole orientations and the interdipole axis:

    orthogonal-perpendicular   d1 = x, d2 = y, axis = z   (a=0, b=0, c=-1)
    syntropic-perpendicular    d1 = d2 = x, axis = z      (a=1, b=0, c=0)
    isotropic                  d1 = d2 = (1,1,1)/sqrt(3), axis = z
    custom                     requires --d1/--d2/--axis

The medium defaults to vacuum; it can be given either as the explicit pair
--n-left/--n-right, as --n-bar alone (inactive medium), or as --n-bar with
--rotation (specific rotation divided by the wave vector, applied with the
half-difference convention; see MediumChirality.from_mean_and_rotation).

A flat key=value config file (--config) supplies defaults for any flag
(keys are flag names with '-' replaced by '_'); explicit flags win.
Output is byte-identical across repeated runs with identical inputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import collective, dynamics
from .collective import LambCutoff, MediumChirality
from .errors import ChidipError, UsageError
from .geometry import geometry_factors, normalize_geometry

SCENARIOS = {
    "orthogonal-perpendicular": ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "syntropic-perpendicular": ((1, 0, 0), (1, 0, 0), (0, 0, 1)),
    "isotropic": ((1, 1, 1), (1, 1, 1), (0, 0, 1)),
}

_BASE_HEADER = "x,gamma_s,gamma_as,delta,f1,f2,e_int"
_DEFAULT_X = "0.5:10:200"
_DEFAULT_TIME_GRID = "0:5:200"


@dataclass(frozen=True)
class SweepRequest:
    scenario: str
    d1: tuple
    d2: tuple
    axis: tuple
    medium: MediumChirality
    x_start: float
    x_stop: float
    n_points: int
    time_sample: float
    output_format: str
    lamb_cutoff: float | None


@dataclass(frozen=True)
class SweepRow:
    x: float
    gamma_s: float
    gamma_as: float
    delta: float
    f1: float
    f2: float
    e_int: float
    delta_plus: float | None = None
    delta_minus: float | None = None


def run_sweep(req: SweepRequest) -> list[SweepRow]:
    """Evaluate the collective spectrum and E_int(time_sample) on the grid."""
    g = geometry_factors(normalize_geometry(req.d1, req.d2, req.axis,
                                            req.x_start))
    cutoff = LambCutoff(req.lamb_cutoff) if req.lamb_cutoff is not None else None
    a_l = complex(collective.a_l_damping(req.medium), 0.0)
    rows = []
    for x in np.linspace(req.x_start, req.x_stop, req.n_points):
        spec = collective.collective_spectrum(float(x), req.medium, g, cutoff)
        traj = dynamics.evolve(a_l, complex(-spec.f1, spec.f2),
                               [req.time_sample])
        rows.append(SweepRow(
            x=float(x),
            gamma_s=2.0 * spec.gamma_plus,
            gamma_as=2.0 * spec.gamma_minus,
            delta=spec.delta,
            f1=spec.f1,
            f2=spec.f2,
            e_int=float(traj.e_int[0]),
            delta_plus=spec.delta_plus if cutoff is not None else None,
            delta_minus=spec.delta_minus if cutoff is not None else None,
        ))
    return rows


# ---------------------------------------------------------------------------
# flag/config plumbing

def _parse_vector(text, flag):
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"{flag} expects X,Y,Z — got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise UsageError(f"{flag} expects three numbers — got {text!r}") from None


def _parse_float(text, flag):
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"{flag} expects a number — got {text!r}") from None


def _parse_range(text, flag, default_points=None):
    """START:STOP[:POINTS] -> (start, stop, points)."""
    parts = text.split(":")
    if len(parts) == 2 and default_points is not None:
        parts.append(str(default_points))
    if len(parts) != 3:
        raise UsageError(f"{flag} expects START:STOP:POINTS — got {text!r}")
    start = _parse_float(parts[0], flag)
    stop = _parse_float(parts[1], flag)
    try:
        points = int(parts[2])
    except ValueError:
        raise UsageError(f"{flag} POINTS must be an integer — got "
                         f"{parts[2]!r}") from None
    if start >= stop:
        raise UsageError(f"{flag}: START must be < STOP, got {text!r}")
    if points < 2:
        raise UsageError(f"{flag}: POINTS must be >= 2, got {points}")
    return start, stop, points


def _read_config(path, allowed):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got "
                             f"{line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in allowed:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _merge_config(args, parser_keys):
    """Fill flag values that were left at None from the config file."""
    if args.config is None:
        return
    file_values = _read_config(args.config, parser_keys)
    for key, value in file_values.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _resolve_medium(args) -> MediumChirality:
    n_left = getattr(args, "n_left", None)
    n_right = getattr(args, "n_right", None)
    n_bar = getattr(args, "n_bar", None)
    rotation = getattr(args, "rotation", None)
    if rotation is not None:
        if n_left is not None or n_right is not None:
            raise UsageError("--rotation is mutually exclusive with "
                             "--n-left/--n-right")
        mean = _parse_float(n_bar, "--n-bar") if n_bar is not None else 1.0
        return MediumChirality.from_mean_and_rotation(
            mean, _parse_float(rotation, "--rotation"))
    if n_bar is not None:
        if n_left is not None or n_right is not None:
            raise UsageError("give either --n-bar or the explicit "
                             "--n-left/--n-right pair, not both")
        mean = _parse_float(n_bar, "--n-bar")
        return MediumChirality(mean, mean)
    if (n_left is None) != (n_right is None):
        raise UsageError("--n-left and --n-right must be given together")
    if n_left is None:
        return MediumChirality(1.0, 1.0)
    return MediumChirality(_parse_float(n_left, "--n-left"),
                           _parse_float(n_right, "--n-right"))


def _resolve_vectors(args):
    given = {flag: getattr(args, flag, None) for flag in ("d1", "d2", "axis")}
    scenario = getattr(args, "scenario", None)
    if scenario is None:
        raise UsageError("--scenario is required "
                         f"(one of: {', '.join(SCENARIOS)}, custom)")
    if scenario == "custom":
        missing = [f"--{k}" for k, v in given.items() if v is None]
        if missing:
            raise UsageError("scenario=custom requires explicit vectors; "
                             f"missing {', '.join(missing)}")
        return tuple(_parse_vector(given[k], f"--{k}")
                     for k in ("d1", "d2", "axis"))
    if scenario not in SCENARIOS:
        raise UsageError(f"unknown scenario {scenario!r} "
                         f"(one of: {', '.join(SCENARIOS)}, custom)")
    extra = [f"--{k}" for k, v in given.items() if v is not None]
    if extra:
        raise UsageError(f"{', '.join(extra)} conflict with "
                         f"--scenario {scenario}; use --scenario custom")
    return SCENARIOS[scenario]


def _resolve_format(args):
    fmt = getattr(args, "format", None) or "csv"
    if fmt not in ("csv", "json"):
        raise UsageError(f"--format must be csv or json, got {fmt!r}")
    return fmt


def _add_common_flags(p):
    p.add_argument("--scenario")
    p.add_argument("--d1")
    p.add_argument("--d2")
    p.add_argument("--axis")
    p.add_argument("--n-left", dest="n_left")
    p.add_argument("--n-right", dest="n_right")
    p.add_argument("--n-bar", dest="n_bar")
    p.add_argument("--rotation")
    p.add_argument("--x")
    p.add_argument("--time")
    p.add_argument("--format")
    p.add_argument("--config")


def parse_config(tokens) -> SweepRequest:
    """Resolve sweep flags (and an optional config file) into a SweepRequest.

    tokens are the arguments of the sweep subcommand, e.g.
    ["--scenario", "isotropic", "--x", "0.5:10:200"].
    """
    parser = argparse.ArgumentParser(prog="chidip sweep", add_help=False)
    _add_common_flags(parser)
    parser.add_argument("--lamb-cutoff", dest="lamb_cutoff")
    try:
        args = parser.parse_args(list(tokens))
    except SystemExit:
        raise UsageError("unrecognized sweep arguments") from None
    keys = {"scenario", "d1", "d2", "axis", "n_left", "n_right", "n_bar",
            "rotation", "x", "time", "format", "lamb_cutoff"}
    _merge_config(args, keys)
    d1, d2, axis = _resolve_vectors(args)
    medium = _resolve_medium(args)
    x_start, x_stop, n_points = _parse_range(args.x or _DEFAULT_X, "--x",
                                             default_points=200)
    if x_start <= 0.0:
        raise UsageError(f"--x START must be > 0, got {x_start}")
    time_sample = _parse_float(args.time, "--time") if args.time is not None else 1.0
    if time_sample < 0.0 or not math.isfinite(time_sample):
        raise UsageError(f"--time must be a finite non-negative number, "
                         f"got {time_sample}")
    cutoff = (_parse_float(args.lamb_cutoff, "--lamb-cutoff")
              if args.lamb_cutoff is not None else None)
    return SweepRequest(
        scenario=args.scenario, d1=d1, d2=d2, axis=axis, medium=medium,
        x_start=x_start, x_stop=x_stop, n_points=n_points,
        time_sample=time_sample, output_format=_resolve_format(args),
        lamb_cutoff=cutoff)


# ---------------------------------------------------------------------------
# output

def _fmt(v: float) -> str:
    # + 0.0 folds negative zero; .15g keeps >= 12 significant digits and is
    # locale independent
    return format(float(v) + 0.0, ".15g")


def _emit_table(header, rows, fmt, out):
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        payload = [dict(zip(header, (float(v) for v in row))) for row in rows]
        out.write(json.dumps(payload, indent=2) + "\n")


def _cmd_sweep(tokens, out) -> int:
    req = parse_config(tokens)
    rows = run_sweep(req)
    header = _BASE_HEADER.split(",")
    table = [[r.x, r.gamma_s, r.gamma_as, r.delta, r.f1, r.f2, r.e_int]
             for r in rows]
    if req.lamb_cutoff is not None:
        header += ["delta_plus", "delta_minus"]
        for line, row in zip(table, rows):
            line += [row.delta_plus, row.delta_minus]
    _emit_table(header, table, req.output_format, out)
    return 0


def _cmd_dynamics(tokens, out) -> int:
    parser = argparse.ArgumentParser(prog="chidip dynamics", add_help=False)
    _add_common_flags(parser)
    try:
        args = parser.parse_args(list(tokens))
    except SystemExit:
        raise UsageError("unrecognized dynamics arguments") from None
    keys = {"scenario", "d1", "d2", "axis", "n_left", "n_right", "n_bar",
            "rotation", "x", "time", "format"}
    _merge_config(args, keys)
    d1, d2, axis = _resolve_vectors(args)
    medium = _resolve_medium(args)
    if args.x is None:
        raise UsageError("dynamics requires --x SEPARATION (single number)")
    if ":" in args.x:
        raise UsageError("dynamics takes a single separation --x, "
                         "not a range")
    x = _parse_float(args.x, "--x")
    t0, t1, nt = _parse_range(args.time or _DEFAULT_TIME_GRID, "--time")
    if t0 < 0.0:
        raise UsageError(f"--time START must be >= 0, got {t0}")
    fmt = _resolve_format(args)

    g = geometry_factors(normalize_geometry(d1, d2, axis, x))
    a_l = complex(collective.a_l_damping(medium), 0.0)
    a_t = collective.a_t(x, medium, g)
    traj = dynamics.evolve(a_l, a_t, np.linspace(t0, t1, nt))
    header = ["t", "p1", "p2", "p_plus", "p_minus", "e_int"]
    table = [[t, p1, p2, pp, pm, e] for t, p1, p2, pp, pm, e in zip(
        traj.times, traj.p1, traj.p2, traj.p_plus, traj.p_minus, traj.e_int)]
    _emit_table(header, table, fmt, out)
    return 0


def _cmd_lamb(tokens, out) -> int:
    parser = argparse.ArgumentParser(prog="chidip lamb", add_help=False)
    parser.add_argument("--n-left", dest="n_left")
    parser.add_argument("--n-right", dest="n_right")
    parser.add_argument("--n-bar", dest="n_bar")
    parser.add_argument("--rotation")
    parser.add_argument("--format")
    parser.add_argument("--config")
    parser.add_argument("--lamb-cutoff", dest="lamb_cutoff")
    try:
        args = parser.parse_args(list(tokens))
    except SystemExit:
        raise UsageError("unrecognized lamb arguments") from None
    keys = {"n_left", "n_right", "n_bar", "rotation", "format", "lamb_cutoff"}
    _merge_config(args, keys)
    medium = _resolve_medium(args)
    if args.lamb_cutoff is None:
        raise UsageError("lamb requires --lamb-cutoff LAMBDA")
    cutoff = LambCutoff(_parse_float(args.lamb_cutoff, "--lamb-cutoff"))
    value = collective.lamb_shift(medium, cutoff)
    _emit_table(["n_bar", "lambda_cutoff", "delta_lamb"],
                [[medium.n_bar, cutoff.lambda_cutoff, value]],
                _resolve_format(args), out)
    return 0


_COMMANDS = {"sweep": _cmd_sweep, "dynamics": _cmd_dynamics, "lamb": _cmd_lamb}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ("-h", "--help"):
        print(__doc__, file=sys.stderr)
        return 0 if argv else 2
    command, tokens = argv[0], argv[1:]
    if command not in _COMMANDS:
        print(f"chidip: unknown command {command!r} "
              f"(expected one of: {', '.join(_COMMANDS)})", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[command](tokens, sys.stdout)
    except UsageError as exc:
        print(f"chidip {command}: {exc}", file=sys.stderr)
        return 2
    except ChidipError as exc:
        print(f"chidip {command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
