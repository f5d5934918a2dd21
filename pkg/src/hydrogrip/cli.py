"""Command-line front end: ``hydrogrip <subcommand> ...``.

Exit codes: 0 success, 1 numerical or domain failure, 2 usage or
configuration failure.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from . import control, grasp, model
from .config import ConfigError, default_config, parse_config
from .errors import DomainError

MPA = 1e6


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    text = f"{float(value):.9g}"
    return "0" if text == "-0" else text


def write_csv(path_or_stream, header, rows):
    """RFC-4180 style CSV with LF line endings and 9 significant digits."""
    if hasattr(path_or_stream, "write"):
        _write(path_or_stream, header, rows)
    else:
        with open(path_or_stream, "w", encoding="utf-8", newline="") as fh:
            _write(fh, header, rows)


def _write(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def _deg_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hydrogrip",
        description="Hydrostatic model, grasp analysis and control simulation of a hydraulic soft gripper.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON configuration (default: shipped configuration)")
        return p

    p = add("pressure-curve", "free-bending pressure f(theta)")
    p.add_argument("--theta-max", type=float, default=90.0, help="largest angle [deg]")
    p.add_argument("--steps", type=_positive_int, default=91)
    p.add_argument("--out", required=True)

    p = add("payload", "maximum payload versus pressure")
    p.add_argument("--pressure-max", type=float, default=4.0, help="[MPa]")
    p.add_argument("--steps", type=_positive_int, default=41)
    p.add_argument("--thetas", type=_deg_list, default=[40.0, 50.0, 60.0, 70.0], help="angles [deg]")
    p.add_argument("--weights", choices=["uniform", "fem"], help="override the configured weight vector")
    p.add_argument("--out", required=True)

    p = add("graspable-area", "grasp force and feasibility over the (theta, P) plane")
    p.add_argument("--mass", type=float, required=True, help="[kg]")
    p.add_argument("--theta-max", type=float, default=90.0, help="[deg]")
    p.add_argument("--pressure-max", type=float, default=4.0, help="[MPa]")
    p.add_argument("--theta-steps", type=_positive_int, default=181)
    p.add_argument("--pressure-steps", type=_positive_int, default=201)
    p.add_argument("--weights", choices=["uniform", "fem"])
    p.add_argument("--out", required=True)

    p = add("grasp-force", "contact forces for one (theta, mass, pressure)")
    p.add_argument("--theta", type=float, required=True, help="[deg]")
    p.add_argument("--mass", type=float, required=True, help="[kg]")
    p.add_argument("--pressure", type=float, required=True, help="[MPa]")
    p.add_argument("--weights", choices=["uniform", "fem"])

    p = add("simulate", "closed-loop bend-angle control")
    p.add_argument("--duration", type=float, required=True, help="[s]")
    p.add_argument("--out", required=True)
    return parser


def cmd_pressure_curve(cfg, args, stdout):
    params = cfg.gripper
    thetas = np.linspace(0.0, math.radians(args.theta_max), args.steps)
    rows = [(math.degrees(th), model.free_pressure(params, th) / MPA) for th in thetas.tolist()]
    write_csv(args.out, ["theta_deg", "pressure_mpa"], rows)


def cmd_payload(cfg, args, stdout):
    table = grasp.payload_curve(
        cfg.gripper, cfg.finger(args.weights),
        [math.radians(t) for t in args.thetas], args.pressure_max * MPA, args.steps,
    )
    rows = [(math.degrees(th), p / MPA, m) for th, p, m in table.tolist()]
    write_csv(args.out, ["theta_deg", "pressure_mpa", "payload_kg"], rows)


def cmd_graspable_area(cfg, args, stdout):
    grid = grasp.graspable_grid(
        cfg.gripper, cfg.finger(args.weights), args.mass,
        theta_range=(0.0, math.radians(args.theta_max)),
        p_range=(0.0, args.pressure_max * MPA),
        resolution=(args.theta_steps, args.pressure_steps),
    )
    rows = []
    for i, th in enumerate(grid.theta_axis.tolist()):
        for j, p in enumerate(grid.p_axis.tolist()):
            rows.append((
                math.degrees(th), p / MPA, grid.fv[i, j], bool(grid.feasible[i, j]),
                grid.free_curve[i] / MPA,
            ))
    write_csv(
        args.out,
        ["theta_deg", "pressure_mpa", "fv_newton", "feasible", "free_curve_pressure_mpa"],
        rows,
    )


def cmd_grasp_force(cfg, args, stdout):
    sol = grasp.grasp_force(
        cfg.gripper, cfg.finger(args.weights), math.radians(args.theta), args.mass, args.pressure * MPA
    )
    write_csv(
        stdout,
        ["theta_deg", "mass_kg", "pressure_mpa", "fx_newton", "fy_newton", "fu_newton", "fv_newton", "feasible"],
        [(args.theta, args.mass, sol.P / MPA, sol.Fx, sol.Fy, sol.Fu, sol.Fv, sol.feasible)],
    )


def cmd_simulate(cfg, args, stdout):
    trace = control.run_simulation(cfg.gripper, cfg.finger(), cfg.controller, cfg.plant, args.duration)
    n = trace.theta_fingers.shape[1]
    header = (
        ["t_s"] + [f"theta_{j + 1}_deg" for j in range(n)]
        + ["theta_bar_deg", "theta_e_deg", "pressure_mpa", "pressure_ref_mpa", "mass_kg", "fx_newton", "saturated"]
    )
    deg = np.degrees
    rows = (
        [t] + fingers + [tb, te, p / MPA, pr / MPA, m, fx, bool(s)]
        for t, fingers, tb, te, p, pr, m, fx, s in zip(
            trace.t.tolist(), deg(trace.theta_fingers).tolist(), deg(trace.theta_bar).tolist(),
            deg(trace.theta_e).tolist(), trace.P.tolist(), trace.P_ref.tolist(),
            trace.m.tolist(), trace.Fx.tolist(), trace.saturated.tolist(),
        )
    )
    write_csv(args.out, header, rows)


COMMANDS = {
    "pressure-curve": cmd_pressure_curve,
    "payload": cmd_payload,
    "graspable-area": cmd_graspable_area,
    "grasp-force": cmd_grasp_force,
    "simulate": cmd_simulate,
}


def run_command(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = parse_config(args.config) if args.config else default_config()
    except OSError as exc:
        print(f"hydrogrip: cannot read config: {exc}", file=stderr)
        return 2
    except ConfigError as exc:
        print(f"hydrogrip: config error: {exc}", file=stderr)
        return 2
    try:
        COMMANDS[args.command](cfg, args, stdout)
    except (DomainError, ArithmeticError) as exc:
        print(f"hydrogrip {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    return 0


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
