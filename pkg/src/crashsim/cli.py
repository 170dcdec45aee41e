"""Command-line entry points.

Subcommands: generate (synthetic scenarios to files), analyze (injection
sweep + indicator report), ttc (baseline conflict count), oracle
(closed-form corridor energies), validate (scenario diagnostics).
Exit codes: 0 success, 1 config/input error, 2 internal failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

from . import _kernels, io, scenarios
from .errors import ConfigError, CrashsimError, InputFormatError, InvalidParameterError
from .indicators import parse_indicator_name
from .model import InjectionParams, Scenario, StaticGeometry, validate_scenario


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trajectories", help="trajectory CSV file")
    p.add_argument("--vehicles", help="vehicle table CSV file")
    p.add_argument("--geometry", help="static geometry file")


def _load_scenario(args) -> Scenario:
    if not args.trajectories:
        raise ConfigError("--trajectories is required")
    trajectories = io.load_trajectories(args.trajectories, args.vehicles)
    geometry = io.load_geometry(args.geometry) if args.geometry else StaticGeometry()
    return Scenario(trajectories=trajectories, geometry=geometry)


def _cmd_generate(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    if args.kind == "wall":
        scenario = scenarios.wall_corridor(
            length=args.length,
            speed=args.speed,
            mass=args.mass,
            wall_offset=args.wall_offset,
            overhang=args.overhang,
        )
    elif args.kind == "trees":
        scenario = scenarios.tree_corridor(
            length=args.length,
            speed=args.speed,
            mass=args.mass,
            tree_spacing=args.tree_spacing,
            tree_offset=args.tree_offset,
            tree_radius=args.tree_radius,
            overhang=args.overhang,
        )
    else:
        deviation = None
        if args.deviation_angle_deg:
            deviation = scenarios.LaneDeviation(
                position=args.deviation_position,
                angle=math.radians(args.deviation_angle_deg),
            )
        scenario = scenarios.opposing_flow(
            length=args.length,
            lateral_gap=args.lateral_gap,
            flow_per_dir=args.flow,
            speed=args.speed,
            seed=args.seed,
            deviation=deviation,
            duration=args.duration,
        )
    io.save_trajectories(scenario.trajectories, os.path.join(args.out, "trajectories.csv"))
    io.save_vehicles(
        [tr.vehicle for tr in scenario.trajectories],
        os.path.join(args.out, "vehicles.csv"),
    )
    io.save_geometry(scenario.geometry, os.path.join(args.out, "geometry.csv"))
    print(
        json.dumps(
            {
                "out": args.out,
                "vehicles": len(scenario.trajectories),
                "barriers": len(scenario.geometry.barriers),
                "obstacles": len(scenario.geometry.obstacles),
            },
            sort_keys=True,
        )
    )
    return 0


def _cmd_analyze(args) -> int:
    if args.config:
        config = io.load_config(args.config)
    else:
        config = io.RunConfig()
    # flags override the config file
    if args.trajectories:
        config.trajectories = args.trajectories
        config.generator = None
    if args.vehicles:
        config.vehicles = args.vehicles
    if args.geometry:
        config.geometry = args.geometry
    if args.out_dir:
        config.out_dir = args.out_dir
    if args.indicator:
        config.indicators = tuple(args.indicator)
    inj_overrides = {}
    if args.time_step is not None:
        inj_overrides["time_step"] = args.time_step
    if args.distraction_time is not None:
        inj_overrides["distraction_time"] = args.distraction_time
    if args.angle_deg is not None:
        a = math.radians(args.angle_deg)
        inj_overrides["angles"] = (-a, 0.0, a)
        inj_overrides["weights"] = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    if args.sub_step is not None:
        inj_overrides["sub_step"] = args.sub_step
    if args.seed is not None:
        inj_overrides["seed"] = args.seed
    if inj_overrides:
        base = config.injection
        merged = dict(
            time_step=base.time_step,
            distraction_time=base.distraction_time,
            angles=base.angles,
            weights=base.weights,
            sub_step=base.sub_step,
            seed=base.seed,
            epsilon=base.epsilon,
        )
        merged.update(inj_overrides)
        config.injection = InjectionParams(**merged)
    if args.mode:
        config.mode = args.mode
    if args.rate is not None:
        config.rate_per_s = args.rate
    if args.cell_size is not None:
        if config.danger is None:
            config.danger = io.DangerMapSpec()
        config.danger.cell_size = args.cell_size
    if args.ttc_threshold is not None:
        config.ttc = io.TtcSpec(threshold=args.ttc_threshold)
    if args.injury_alpha is not None or args.injury_k is not None:
        if args.injury_alpha is None or args.injury_k is None:
            raise ConfigError("injury model needs both --injury-alpha and --injury-k")
        config.injury = (args.injury_alpha, args.injury_k)
    if args.workers is not None:
        config.workers = args.workers
    report = io.run(config)
    print(json.dumps({"out_dir": config.out_dir, "events": report.get("stats", {}).get("count", 0)}, sort_keys=True))
    return 0


def _cmd_ttc(args) -> int:
    scenario = _load_scenario(args)
    from .ttc import count_conflicts

    conflicts = count_conflicts(
        scenario,
        threshold=args.threshold,
        sub_step=args.sub_step,
        time_step=args.time_step,
    )
    if args.out:
        io.save_conflicts(conflicts, args.out)
    print(json.dumps({"threshold_s": args.threshold, "conflicts": len(conflicts)}, sort_keys=True))
    return 0


def _cmd_oracle(args) -> int:
    spec = parse_indicator_name(args.indicator)
    if args.kind == "wall":
        raw = scenarios.barrier_corridor_raw_energy(
            args.length, args.speed, args.mass, spec.angle, args.time_step
        )
    else:
        raw = scenarios.obstacle_corridor_raw_energy(
            args.length, args.speed, args.mass, args.time_step
        )
    weighted = raw * float(spec.side_weight)
    print(
        json.dumps(
            {
                "kind": args.kind,
                "indicator": spec.name,
                "weighted_j": weighted,
                "raw_total_j": raw,
            },
            sort_keys=True,
        )
    )
    return 0


def _cmd_validate(args) -> int:
    scenario = _load_scenario(args)
    diagnostics = validate_scenario(scenario)
    for d in diagnostics:
        print(
            json.dumps(
                {
                    "kind": d.kind,
                    "vehicle_id": None if d.vehicle_id is None else str(d.vehicle_id),
                    "time": d.time,
                    "message": d.message,
                },
                sort_keys=True,
            )
        )
    print(json.dumps({"diagnostics": len(diagnostics)}, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crashsim",
        description="Driver-error crash simulation over vehicle trajectories",
    )
    parser.add_argument(
        "--version", action="store_true", help="print version and backend, then exit"
    )
    sub = parser.add_subparsers(dest="command")

    g = sub.add_parser("generate", help="write a synthetic scenario to files")
    g.add_argument("kind", choices=["wall", "trees", "opposing"])
    g.add_argument("--out", required=True, help="output directory")
    g.add_argument("--length", type=float, default=1000.0)
    g.add_argument("--speed", type=float, default=25.0, help="m/s")
    g.add_argument("--mass", type=float, default=1000.0)
    g.add_argument("--wall-offset", type=float, default=3.5)
    g.add_argument("--tree-spacing", type=float, default=5.0)
    g.add_argument("--tree-offset", type=float, default=3.5)
    g.add_argument("--tree-radius", type=float, default=0.25)
    g.add_argument("--overhang", type=float, default=0.0)
    g.add_argument("--lateral-gap", type=float, default=3.5)
    g.add_argument("--flow", type=float, default=500.0, help="veh/h per direction")
    g.add_argument("--duration", type=float, default=120.0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--deviation-position", type=float, default=100.0)
    g.add_argument("--deviation-angle-deg", type=float, default=0.0)
    g.set_defaults(func=_cmd_generate)

    a = sub.add_parser("analyze", help="run the injection sweep and indicators")
    a.add_argument("--config", help="JSON config file; flags override it")
    _add_scenario_args(a)
    a.add_argument("--out-dir")
    a.add_argument("--indicator", action="append", help="e.g. Z5-15-1/3 (repeatable)")
    a.add_argument("--time-step", type=float)
    a.add_argument("--distraction-time", type=float)
    a.add_argument("--angle-deg", type=float, help="side deviation; angles become -a,0,+a")
    a.add_argument("--sub-step", type=float)
    a.add_argument("--seed", type=int)
    a.add_argument("--mode", choices=["deterministic", "monte_carlo"])
    a.add_argument("--rate", type=float, help="monte carlo distraction rate per second")
    a.add_argument("--cell-size", type=float, help="danger map cell size, meters")
    a.add_argument("--ttc-threshold", type=float, help="also run the TTC baseline")
    a.add_argument("--injury-alpha", type=float)
    a.add_argument("--injury-k", type=float)
    a.add_argument("--workers", type=int)
    a.set_defaults(func=_cmd_analyze)

    t = sub.add_parser("ttc", help="baseline TTC conflict count")
    _add_scenario_args(t)
    t.add_argument("--threshold", type=float, default=1.5)
    t.add_argument("--sub-step", type=float, default=0.05)
    t.add_argument("--time-step", type=float, default=1.0)
    t.add_argument("--out", help="write conflicts CSV here")
    t.set_defaults(func=_cmd_ttc)

    o = sub.add_parser("oracle", help="closed-form corridor energy")
    o.add_argument("kind", choices=["wall", "trees"])
    o.add_argument("--indicator", default="Z5-15-1/3")
    o.add_argument("--length", type=float, default=1000.0)
    o.add_argument("--speed", type=float, default=25.0)
    o.add_argument("--mass", type=float, default=1000.0)
    o.add_argument("--time-step", type=float, default=1.0)
    o.set_defaults(func=_cmd_oracle)

    v = sub.add_parser("validate", help="report scenario diagnostics")
    _add_scenario_args(v)
    v.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(format="%(levelname)s %(message)s", level=logging.WARNING)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        from . import __version__

        print(f"crashsim {__version__} (kernels: {_kernels.backend_name()})")
        return 0
    if not getattr(args, "func", None):
        parser.print_help()
        return 1
    try:
        return args.func(args)
    except (ConfigError, InputFormatError, InvalidParameterError) as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    except CrashsimError as exc:
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2
    except Exception as exc:  # internal failure contract: exit 2
        print(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
