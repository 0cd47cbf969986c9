"""Command-line entry point.

Exit codes: 0 success, 1 input error, 2 numerical failure.
"""

import argparse
import logging
import re
import sys
from pathlib import Path

from . import io, synthetic
from .curve import default_spacing
from .errors import InputError, NumericalError
from .evolution import Params
from .pipeline import RunConfig, smooth_trajectory

log = logging.getLogger("trajsmooth")

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2


def _safe(tid):
    return re.sub(r"[^A-Za-z0-9_.-]", "_", tid) or "_"


def _add_run_flags(p):
    d = Params()
    p.add_argument("input", type=Path, help="trajectory CSV (id,frame,x,y) or JSON")
    p.add_argument("-o", "--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--lambda", dest="lam", type=float, default=d.lam, help="attraction weight")
    p.add_argument("--delta", type=float, default=d.delta, help="curvature weight")
    p.add_argument("--omega", type=float, default=d.omega, help="redistribution speed")
    p.add_argument("--tau", type=float, default=d.tau, help="time step")
    p.add_argument("--epsilon", type=float, default=d.epsilon, help="stopping tolerance")
    p.add_argument("--relative-epsilon", action="store_true", help="scale epsilon by the trajectory's bounding-box diagonal")
    p.add_argument("--check-interval", type=int, default=d.check_interval, help="steps between stopping checks")
    p.add_argument("--max-steps", type=int, default=d.max_steps)
    p.add_argument("--steps", type=int, default=None, help="run exactly this many steps instead of the stopping test")
    p.add_argument("--spacing", type=float, default=None, help="resampling spacing (default: median segment / 4)")
    p.add_argument("--dt", type=float, default=1.0, help="time units per frame")
    p.add_argument("--stride", type=int, default=0, help="plot every stride-th intermediate curve")
    p.add_argument("--svg", action="store_true", help="also write SVG figures")


def build_parser():
    parser = argparse.ArgumentParser(prog="trajsmooth", description="Smooth noisy trajectories by curve evolution.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_run_flags(sub.add_parser("smooth", help="smooth trajectories"))
    _add_run_flags(sub.add_parser("velocity", help="smooth and reconstruct velocities"))
    demo = sub.add_parser("demo", help="built-in experiments")
    demo.add_argument("name", choices=["ellipse", "sine"])
    demo.add_argument("-o", "--out", type=Path, default=Path("."))
    demo.add_argument("--steps", type=int, default=None)
    return parser


def _config(args):
    params = Params(
        delta=args.delta,
        lam=args.lam,
        omega=args.omega,
        tau=args.tau,
        epsilon=args.epsilon,
        check_interval=args.check_interval,
        max_steps=args.max_steps,
    )
    if args.spacing is not None and not args.spacing > 0:
        raise InputError("--spacing must be positive")
    if not args.dt > 0:
        raise InputError("--dt must be positive")
    return RunConfig(
        params=params,
        spacing=args.spacing,
        dt=args.dt,
        steps=args.steps,
        stride=args.stride,
        relative_epsilon=args.relative_epsilon,
    )


def write_outputs(out, name, tid, outcome, velocity, svg, title=None):
    from . import plotting

    io.write_curve_csv(out / f"{name}.curve.csv", tid, outcome.points)
    io.write_log_csv(out / f"{name}.log.csv", tid, outcome.result)
    if svg:
        plotting.plot_smoothing(out / f"{name}.svg", outcome.raw, outcome.points, outcome.snapshots, title)
    if velocity:
        field = outcome.velocities()
        io.write_velocity_csv(out / f"{name}.velocity.csv", tid, outcome.points, field)
        if svg:
            plotting.plot_velocity(out / f"{name}.velocity.svg", outcome.raw, outcome.points, field, title)


def run_file(args, velocity):
    config = _config(args)
    trajectories = io.group_trajectories(io.parse_trajectory(args.input))
    args.out.mkdir(parents=True, exist_ok=True)
    for tid, (frames, raw) in trajectories.items():
        try:
            outcome = smooth_trajectory(raw, config, frames=frames, track_velocity=velocity)
        except NumericalError as exc:
            raise NumericalError(f"trajectory {tid!r}: {exc.message}", step=exc.step) from exc
        res = outcome.result
        log.info("trajectory %s: %d steps, %s", tid, res.steps, res.stop_reason.value)
        write_outputs(args.out, _safe(tid), tid, outcome, velocity, args.svg)


def run_demo(args):
    args.out.mkdir(parents=True, exist_ok=True)
    if args.name == "ellipse":
        raw = synthetic.semi_ellipse(1.0, 0.5, 9)
        config = RunConfig(
            params=Params(delta=0.05, lam=0.0, omega=1.0, tau=0.001),
            spacing=default_spacing(raw) / 4,
            steps=args.steps or 1000,
            stride=100,
        )
        outcome = smooth_trajectory(raw, config, track_velocity=True)
        write_outputs(args.out, "ellipse", "ellipse", outcome, True, True)
    else:
        raw = synthetic.sine_curve(200)
        for lam in (0.0, 1.0):
            config = RunConfig(
                params=Params(delta=0.001, lam=lam, omega=1.0, tau=0.001),
                spacing=1.0,
                steps=args.steps or 10000,
                stride=1000,
            )
            outcome = smooth_trajectory(raw, config)
            name = f"sine_lambda{lam:g}"
            write_outputs(args.out, name, name, outcome, False, True, title=f"lambda = {lam:g}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        if args.command == "demo":
            run_demo(args)
        else:
            run_file(args, velocity=args.command == "velocity")
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
