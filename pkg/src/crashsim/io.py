"""File formats, run configuration and the end-to-end analysis pipeline.

Formats are plain delimited text with header-declared columns:

trajectories.csv   time_s, vehicle_id, x_m, y_m, speed_mps|speed_kmh
                   and optionally heading_rad (derived from positions
                   when absent)
vehicles.csv       vehicle_id, class, length_m, width_m, mass_kg
                   (blank dimensions fall back to class defaults)
geometry.csv       [barriers] barrier_id, x_m, y_m rows in order, then
                   [obstacles] x_m, y_m, radius_m
events.csv         one row per crash event; the log is the source of
                   truth, every report number can be recomputed from it
report.json        indicators, aggregate statistics, threshold table
grid.csv           danger-map matrices with an origin/cell-size header
conflicts.csv      one row per merged TTC conflict

All numeric output uses repr round-tripping, so identical configurations
produce byte-identical artifacts.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import dynamics
from .errors import ConfigError, InputFormatError, InvalidParameterError
from .indicators import (
    DangerGrid,
    SummaryStats,
    aggregate_stats,
    danger_map,
    parse_indicator_name,
    threshold_view,
    z_components,
    z_value,
)
from .injection import CrashEvent, inject_all, inject_sampled
from .model import (
    CLASS_DEFAULTS,
    InjectionParams,
    Scenario,
    StaticGeometry,
    Trajectory,
    VehicleAttributes,
    trajectory_from_samples,
    validate_scenario,
)
from .ttc import ConflictEvent, count_conflicts
from . import scenarios

KMH_TO_MPS = 1.0 / 3.6

logger = logging.getLogger("crashsim")

DEFAULT_THRESHOLDS = (0.0, 1e4, 1e5, 1e6)


def _fmt(value: float) -> str:
    return repr(float(value))


# ---------------------------------------------------------------------------
# vehicles table


def save_vehicles(attrs: Sequence[VehicleAttributes], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["vehicle_id", "class", "length_m", "width_m", "mass_kg"])
        for a in attrs:
            writer.writerow(
                [str(a.id), a.vehicle_class, _fmt(a.length), _fmt(a.width), _fmt(a.mass)]
            )


def load_vehicles(path: str) -> dict[str, VehicleAttributes]:
    table: dict[str, VehicleAttributes] = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputFormatError("empty vehicle table", path)
        idx = {name.strip(): i for i, name in enumerate(header)}
        if "vehicle_id" not in idx:
            raise InputFormatError("vehicle table needs a vehicle_id column", path, 1)

        def cell(row, name):
            i = idx.get(name)
            if i is None or i >= len(row):
                return ""
            return row[i].strip()

        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            vid = cell(row, "vehicle_id")
            cls = cell(row, "class") or "car"
            if cls not in CLASS_DEFAULTS and cls != "custom":
                raise InputFormatError(f"unknown vehicle class {cls!r}", path, lineno)
            defaults = CLASS_DEFAULTS.get(cls)
            try:
                length = float(cell(row, "length_m") or (defaults[0] if defaults else "nan"))
                width = float(cell(row, "width_m") or (defaults[1] if defaults else "nan"))
                mass = float(cell(row, "mass_kg") or (defaults[2] if defaults else "nan"))
            except ValueError as exc:
                raise InputFormatError(f"bad vehicle row: {exc}", path, lineno) from exc
            if math.isnan(length) or math.isnan(width) or math.isnan(mass):
                raise InputFormatError(
                    "custom-class vehicles must declare length, width and mass",
                    path,
                    lineno,
                )
            try:
                table[vid] = VehicleAttributes(
                    id=vid, length=length, width=width, mass=mass, vehicle_class=cls
                )
            except InvalidParameterError as exc:
                raise InputFormatError(str(exc), path, lineno) from exc
    return table


# ---------------------------------------------------------------------------
# trajectories


def save_trajectories(trajectories: Sequence[Trajectory], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["time_s", "vehicle_id", "x_m", "y_m", "speed_mps", "heading_rad"])
        for tr in trajectories:
            for s in tr.states:
                writer.writerow(
                    [
                        _fmt(s.time),
                        str(tr.vehicle.id),
                        _fmt(s.position[0]),
                        _fmt(s.position[1]),
                        _fmt(s.speed),
                        _fmt(s.heading),
                    ]
                )


def load_trajectories(
    path: str, vehicles_path: Optional[str] = None
) -> tuple[Trajectory, ...]:
    """Parse a trajectory table; speed unit comes from the header column name."""
    attrs_table = load_vehicles(vehicles_path) if vehicles_path else None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputFormatError("empty trajectory file", path)
        idx = {name.strip(): i for i, name in enumerate(header)}
        for required in ("time_s", "vehicle_id", "x_m", "y_m"):
            if required not in idx:
                raise InputFormatError(f"missing column {required}", path, 1)
        has_mps = "speed_mps" in idx
        has_kmh = "speed_kmh" in idx
        if has_mps == has_kmh:
            raise InputFormatError(
                "exactly one of speed_mps / speed_kmh must be declared", path, 1
            )
        speed_col = "speed_mps" if has_mps else "speed_kmh"
        speed_scale = 1.0 if has_mps else KMH_TO_MPS
        has_heading = "heading_rad" in idx

        rows: dict[str, list] = {}
        order: list[str] = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                t = float(row[idx["time_s"]])
                vid = row[idx["vehicle_id"]].strip()
                x = float(row[idx["x_m"]])
                y = float(row[idx["y_m"]])
                speed = float(row[idx[speed_col]]) * speed_scale
                heading = float(row[idx["heading_rad"]]) if has_heading else None
            except (ValueError, IndexError) as exc:
                raise InputFormatError(f"malformed row: {exc}", path, lineno) from exc
            if not vid:
                raise InputFormatError("empty vehicle_id", path, lineno)
            if speed < 0:
                raise InputFormatError(f"negative speed {speed}", path, lineno)
            if vid not in rows:
                rows[vid] = []
                order.append(vid)
            rows[vid].append((t, x, y, speed, heading))

    if not rows:
        raise InputFormatError("trajectory file has no data rows", path)
    if not has_heading:
        logger.info(
            "%s: no heading_rad column; headings derived from positions", path
        )
    trajectories = []
    for vid in order:
        if attrs_table is not None:
            attrs = attrs_table.get(vid)
            if attrs is None:
                raise InputFormatError(
                    f"vehicle {vid!r} appears in trajectories but not in the "
                    "vehicle table",
                    path,
                )
        else:
            length, width, mass = CLASS_DEFAULTS["car"]
            attrs = VehicleAttributes(id=vid, length=length, width=width, mass=mass)
        trajectories.append(trajectory_from_samples(attrs, rows[vid]))
    return tuple(trajectories)


# ---------------------------------------------------------------------------
# static geometry


def save_geometry(geometry: StaticGeometry, path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("[barriers]\n")
        fh.write("barrier_id,x_m,y_m\n")
        for i, poly in enumerate(geometry.barriers):
            for x, y in poly:
                fh.write(f"{i},{_fmt(x)},{_fmt(y)}\n")
        fh.write("[obstacles]\n")
        fh.write("x_m,y_m,radius_m\n")
        for x, y, r in geometry.obstacles:
            fh.write(f"{_fmt(x)},{_fmt(y)},{_fmt(r)}\n")


def load_geometry(path: str) -> StaticGeometry:
    barriers: dict[str, list] = {}
    barrier_order: list[str] = []
    obstacles: list[tuple[float, float, float]] = []
    section = None
    expect_header = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("["):
                if line == "[barriers]":
                    section = "barriers"
                elif line == "[obstacles]":
                    section = "obstacles"
                else:
                    raise InputFormatError(f"unknown section {line}", path, lineno)
                expect_header = True
                continue
            if section is None:
                raise InputFormatError("data before any section", path, lineno)
            if expect_header:
                expect_header = False
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                if section == "barriers":
                    if len(parts) != 3:
                        raise ValueError("expected barrier_id,x_m,y_m")
                    bid = parts[0]
                    point = (float(parts[1]), float(parts[2]))
                    if bid not in barriers:
                        barriers[bid] = []
                        barrier_order.append(bid)
                    barriers[bid].append(point)
                else:
                    if len(parts) != 3:
                        raise ValueError("expected x_m,y_m,radius_m")
                    obstacles.append((float(parts[0]), float(parts[1]), float(parts[2])))
            except ValueError as exc:
                raise InputFormatError(f"malformed row: {exc}", path, lineno) from exc
    try:
        return StaticGeometry(
            barriers=tuple(tuple(barriers[b]) for b in barrier_order),
            obstacles=tuple(obstacles),
        )
    except InvalidParameterError as exc:
        raise InputFormatError(str(exc), path) from exc


# ---------------------------------------------------------------------------
# event log


EVENT_COLUMNS = (
    "injection_time_s",
    "vehicle_id",
    "angle_rad",
    "angle_index",
    "partner_kind",
    "partner_id",
    "contact_time_s",
    "elapsed_s",
    "contact_x_m",
    "contact_y_m",
    "vehicle_vx_mps",
    "vehicle_vy_mps",
    "partner_vx_mps",
    "partner_vy_mps",
    "energy_total_j",
    "energy_1_j",
    "energy_2_j",
    "delta_v12_mps",
)


def save_events(
    events: Sequence[CrashEvent],
    path: str,
    injury: Optional[Sequence[tuple[float, Optional[float]]]] = None,
) -> None:
    columns = list(EVENT_COLUMNS)
    if injury is not None:
        columns += ["injury_p_driver", "injury_p_partner"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for i, ev in enumerate(events):
            row = [
                _fmt(ev.injection_time),
                str(ev.vehicle_id),
                _fmt(ev.angle),
                str(ev.angle_index),
                ev.partner_kind,
                str(ev.partner_id),
                _fmt(ev.contact_time),
                _fmt(ev.elapsed),
                _fmt(ev.contact_point[0]),
                _fmt(ev.contact_point[1]),
                _fmt(ev.vehicle_velocity[0]),
                _fmt(ev.vehicle_velocity[1]),
                _fmt(ev.partner_velocity[0]),
                _fmt(ev.partner_velocity[1]),
                _fmt(ev.energy_total),
                _fmt(ev.energy_1),
                _fmt(ev.energy_2),
                _fmt(ev.delta_v12_mag),
            ]
            if injury is not None:
                p1, p2 = injury[i]
                row += [_fmt(p1), "" if p2 is None else _fmt(p2)]
            writer.writerow(row)


def load_events(path: str) -> list[CrashEvent]:
    events: list[CrashEvent] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise InputFormatError("empty event log", path)
        idx = {name: i for i, name in enumerate(header)}
        for required in EVENT_COLUMNS:
            if required not in idx:
                raise InputFormatError(f"missing column {required}", path, 1)
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                kind = row[idx["partner_kind"]]
                partner: object = row[idx["partner_id"]]
                if kind != "vehicle":
                    partner = int(partner)
                events.append(
                    CrashEvent(
                        injection_time=float(row[idx["injection_time_s"]]),
                        vehicle_id=row[idx["vehicle_id"]],
                        angle=float(row[idx["angle_rad"]]),
                        angle_index=int(row[idx["angle_index"]]),
                        partner_kind=kind,
                        partner_id=partner,
                        contact_time=float(row[idx["contact_time_s"]]),
                        elapsed=float(row[idx["elapsed_s"]]),
                        contact_point=(
                            float(row[idx["contact_x_m"]]),
                            float(row[idx["contact_y_m"]]),
                        ),
                        vehicle_velocity=(
                            float(row[idx["vehicle_vx_mps"]]),
                            float(row[idx["vehicle_vy_mps"]]),
                        ),
                        partner_velocity=(
                            float(row[idx["partner_vx_mps"]]),
                            float(row[idx["partner_vy_mps"]]),
                        ),
                        energy_total=float(row[idx["energy_total_j"]]),
                        energy_1=float(row[idx["energy_1_j"]]),
                        energy_2=float(row[idx["energy_2_j"]]),
                        delta_v12_mag=float(row[idx["delta_v12_mps"]]),
                    )
                )
            except (ValueError, IndexError) as exc:
                raise InputFormatError(f"malformed event row: {exc}", path, lineno) from exc
    return events


# ---------------------------------------------------------------------------
# danger grid and conflicts


def save_grid(grid: DangerGrid, path: str, indicator_name: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("# crashsim-grid v1\n")
        fh.write(
            f"# origin_x_m={_fmt(grid.origin[0])} origin_y_m={_fmt(grid.origin[1])} "
            f"cell_size_m={_fmt(grid.cell_size)} n_cols={grid.n_cols} n_rows={grid.n_rows}\n"
        )
        fh.write(f"# indicator={indicator_name}\n")
        fh.write(
            f"# overflow_energy_j={_fmt(grid.overflow_energy)} "
            f"overflow_count={grid.overflow_count}\n"
        )
        fh.write("# section=energy_j\n")
        for r in range(grid.n_rows):
            fh.write(",".join(_fmt(v) for v in grid.energy[r]) + "\n")
        fh.write("# section=count\n")
        for r in range(grid.n_rows):
            fh.write(",".join(str(int(v)) for v in grid.counts[r]) + "\n")


def save_conflicts(conflicts: Sequence[ConflictEvent], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["time_s", "vehicle_a", "vehicle_b", "ttc_s"])
        for c in conflicts:
            writer.writerow([_fmt(c.time), str(c.vehicle_a), str(c.vehicle_b), _fmt(c.ttc)])


# ---------------------------------------------------------------------------
# run configuration


GENERATORS = {
    "wall_corridor": scenarios.wall_corridor,
    "tree_corridor": scenarios.tree_corridor,
    "opposing_flow": scenarios.opposing_flow,
}


@dataclass
class DangerMapSpec:
    cell_size: float = 10.0
    origin: Optional[tuple[float, float]] = None  # default: scenario bounds corner
    extent: Optional[tuple[float, float]] = None  # default: scenario bounds size
    indicator: Optional[str] = None  # default: first configured indicator


@dataclass
class TtcSpec:
    threshold: float = 1.5
    sub_step: float = 0.05
    time_step: float = 1.0


@dataclass
class RunConfig:
    """Everything one analysis run needs; mirrors the CLI flags."""

    trajectories: Optional[str] = None
    vehicles: Optional[str] = None
    geometry: Optional[str] = None
    generator: Optional[dict] = None
    injection: InjectionParams = field(default_factory=InjectionParams)
    mode: str = "deterministic"  # or "monte_carlo"
    rate_per_s: Optional[float] = None
    indicators: tuple[str, ...] = ("Z5-15-1/3",)
    thresholds: tuple[float, ...] = DEFAULT_THRESHOLDS
    danger: Optional[DangerMapSpec] = field(default_factory=DangerMapSpec)
    ttc: Optional[TtcSpec] = None
    injury: Optional[tuple[float, float]] = None  # alpha m/s, k
    out_dir: str = "crashsim-out"
    events_name: str = "events.csv"
    report_name: str = "report.json"
    grid_name: str = "danger_grid.csv"
    conflicts_name: str = "conflicts.csv"
    workers: int = 1

    def validate(self) -> None:
        has_source = self.trajectories is not None or self.generator is not None
        if not has_source:
            raise ConfigError("a scenario source (files or generator) is required")
        if self.trajectories is not None and self.generator is not None:
            raise ConfigError("give either trajectory files or a generator, not both")
        if not self.indicators and self.ttc is None:
            raise ConfigError("no analysis requested: configure indicators and/or ttc")
        if self.mode not in ("deterministic", "monte_carlo"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.mode == "monte_carlo":
            if self.rate_per_s is None or self.rate_per_s <= 0:
                raise ConfigError("monte_carlo mode needs rate_per_s > 0")
            if self.injection.seed is None:
                raise ConfigError("monte_carlo mode needs a seed")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        for path in (self.trajectories, self.vehicles, self.geometry):
            if path is not None and not os.path.exists(path):
                raise ConfigError(f"input file does not exist: {path}")
        if self.generator is not None:
            kind = self.generator.get("kind")
            if kind not in GENERATORS:
                raise ConfigError(f"unknown generator kind {kind!r}")


def config_from_dict(data: dict) -> RunConfig:
    cfg = RunConfig()
    src = data.get("scenario", {})
    cfg.trajectories = src.get("trajectories")
    cfg.vehicles = src.get("vehicles")
    cfg.geometry = src.get("geometry")
    cfg.generator = src.get("generator")
    inj = data.get("injection", {})
    angles_deg = inj.get("angles_deg")
    kwargs = {}
    if angles_deg is not None:
        kwargs["angles"] = tuple(math.radians(a) for a in angles_deg)
        weights = inj.get("weights")
        if weights is None:
            weights = [1.0 / len(angles_deg)] * len(angles_deg)
        kwargs["weights"] = tuple(weights)
    for src_key, dst_key in (
        ("time_step", "time_step"),
        ("distraction_time", "distraction_time"),
        ("sub_step", "sub_step"),
        ("seed", "seed"),
        ("epsilon", "epsilon"),
    ):
        if src_key in inj:
            kwargs[dst_key] = inj[src_key]
    try:
        cfg.injection = InjectionParams(**kwargs)
    except InvalidParameterError as exc:
        raise ConfigError(f"bad injection parameters: {exc}") from exc
    cfg.mode = inj.get("mode", "deterministic")
    cfg.rate_per_s = inj.get("rate_per_s")
    if "indicators" in data:
        cfg.indicators = tuple(data["indicators"])
    if "thresholds_j" in data:
        cfg.thresholds = tuple(float(t) for t in data["thresholds_j"])
    if "danger_map" in data:
        dm = data["danger_map"]
        if dm is None:
            cfg.danger = None
        else:
            cfg.danger = DangerMapSpec(
                cell_size=float(dm.get("cell_size", 10.0)),
                origin=tuple(dm["origin"]) if dm.get("origin") else None,
                extent=tuple(dm["extent"]) if dm.get("extent") else None,
                indicator=dm.get("indicator"),
            )
    if data.get("ttc"):
        t = data["ttc"]
        cfg.ttc = TtcSpec(
            threshold=float(t.get("threshold", 1.5)),
            sub_step=float(t.get("sub_step", 0.05)),
            time_step=float(t.get("time_step", 1.0)),
        )
    if data.get("injury"):
        cfg.injury = (float(data["injury"]["alpha"]), float(data["injury"]["k"]))
    out = data.get("output", {})
    cfg.out_dir = out.get("dir", cfg.out_dir)
    cfg.events_name = out.get("events", cfg.events_name)
    cfg.report_name = out.get("report", cfg.report_name)
    cfg.grid_name = out.get("grid", cfg.grid_name)
    cfg.conflicts_name = out.get("conflicts", cfg.conflicts_name)
    cfg.workers = int(data.get("workers", 1))
    return cfg


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def resolve_scenario(config: RunConfig) -> Scenario:
    if config.generator is not None:
        params = {k: v for k, v in config.generator.items() if k != "kind"}
        kind = config.generator["kind"]
        if kind == "opposing_flow" and "deviation" in params and params["deviation"]:
            dev = params["deviation"]
            params["deviation"] = scenarios.LaneDeviation(
                position=float(dev["position"]), angle=math.radians(float(dev["angle_deg"]))
            )
        try:
            return GENERATORS[kind](**params)
        except (TypeError, InvalidParameterError) as exc:
            raise ConfigError(f"generator {kind}: {exc}") from exc
    trajectories = load_trajectories(config.trajectories, config.vehicles)
    geometry = load_geometry(config.geometry) if config.geometry else StaticGeometry()
    return Scenario(trajectories=trajectories, geometry=geometry)


# ---------------------------------------------------------------------------
# reporting


def _stats_dict(stats: SummaryStats) -> dict:
    return {
        "count": stats.count,
        "energy_sum_j": stats.energy_sum,
        "energy_mean_j": stats.energy_mean,
        "energy_variance_j2": stats.energy_variance,
        "energy_min_j": stats.energy_min,
        "energy_max_j": stats.energy_max,
        "elapsed_mean_s": stats.elapsed_mean,
        "per_angle": {
            key: {
                "count": a.count,
                "energy_sum_j": a.energy_sum,
                "energy_mean_j": a.energy_mean,
            }
            for key, a in stats.per_angle.items()
        },
    }


def _injury_columns(
    events: Sequence[CrashEvent], scenario: Scenario, alpha: float, k: float
) -> list[tuple[float, Optional[float]]]:
    """Per-event injury probabilities for the projecting vehicle and, for
    vehicle partners, the struck vehicle.

    Static impacts use the velocity change implied by the absorbed energy,
    sqrt(2 E / m)."""
    attrs = {str(tr.vehicle.id): tr.vehicle for tr in scenario.trajectories}
    out = []
    for ev in events:
        m1 = attrs[str(ev.vehicle_id)].mass
        if ev.partner_kind == "vehicle":
            m2 = attrs[str(ev.partner_id)].mass
            dv1, dv2 = dynamics.split_delta_v(m1, m2, ev.delta_v12_mag)
            out.append(
                (
                    dynamics.injury_probability(dv1, alpha, k),
                    dynamics.injury_probability(dv2, alpha, k),
                )
            )
        else:
            dv1 = math.sqrt(2.0 * ev.energy_1 / m1)
            out.append((dynamics.injury_probability(dv1, alpha, k), None))
    return out


def run(config: RunConfig) -> dict:
    """Execute one configured analysis; writes artifacts, returns the report."""
    config.validate()
    scenario = resolve_scenario(config)
    diagnostics = validate_scenario(scenario)
    for d in diagnostics[:20]:
        logger.warning("scenario diagnostic: %s", d.message)
    if len(diagnostics) > 20:
        logger.warning("... %d further scenario diagnostics", len(diagnostics) - 20)

    os.makedirs(config.out_dir, exist_ok=True)
    report: dict = {
        "schema": "crashsim-report/1",
        "mode": config.mode,
        "diagnostics": len(diagnostics),
    }

    events: list[CrashEvent] = []
    if config.indicators:
        if config.mode == "monte_carlo":
            events = inject_sampled(
                scenario, config.injection, config.rate_per_s, workers=config.workers
            )
        else:
            events = inject_all(scenario, config.injection, workers=config.workers)

        injury_cols = None
        if config.injury is not None:
            alpha, k = config.injury
            injury_cols = _injury_columns(events, scenario, alpha, k)
        save_events(events, os.path.join(config.out_dir, config.events_name), injury_cols)

        specs = []
        for name in config.indicators:
            spec = parse_indicator_name(name)
            specs.append(spec)
        report["indicators"] = []
        for spec in specs:
            front, left, right = z_components(events, spec)
            report["indicators"].append(
                {
                    "name": spec.name,
                    "weighted_j": z_value(events, spec),
                    "raw_total_j": front + left + right,
                    "front_j": front,
                    "left_j": left,
                    "right_j": right,
                }
            )
        report["stats"] = _stats_dict(aggregate_stats(events))
        report["thresholds"] = [
            {
                "min_energy_j": tv.min_energy,
                "total_j": tv.total,
                "mean_j": tv.mean,
                "count": tv.count,
            }
            for tv in (threshold_view(events, t) for t in config.thresholds)
        ]
        if injury_cols is not None:
            ps = [p for pair in injury_cols for p in pair if p is not None]
            report["injury"] = {
                "alpha_mps": config.injury[0],
                "k": config.injury[1],
                "count": len(ps),
                "mean_p": math.fsum(ps) / len(ps) if ps else None,
                "max_p": max(ps) if ps else None,
            }

        if config.danger is not None and specs:
            dm = config.danger
            grid_spec = (
                parse_indicator_name(dm.indicator) if dm.indicator else specs[0]
            )
            bounds = scenario.bounds
            origin = dm.origin or (bounds.min_x, bounds.min_y)
            extent = dm.extent or (
                bounds.max_x - bounds.min_x,
                bounds.max_y - bounds.min_y,
            )
            grid = danger_map(events, origin, dm.cell_size, extent, grid_spec)
            save_grid(
                grid, os.path.join(config.out_dir, config.grid_name), grid_spec.name
            )
            report["danger_map"] = {
                "indicator": grid_spec.name,
                "cell_size_m": dm.cell_size,
                "n_cols": grid.n_cols,
                "n_rows": grid.n_rows,
                "total_energy_j": grid.total_energy(),
                "overflow_count": grid.overflow_count,
            }

    if config.ttc is not None:
        conflicts = count_conflicts(
            scenario,
            threshold=config.ttc.threshold,
            sub_step=config.ttc.sub_step,
            time_step=config.ttc.time_step,
        )
        save_conflicts(conflicts, os.path.join(config.out_dir, config.conflicts_name))
        report["ttc"] = {
            "threshold_s": config.ttc.threshold,
            "conflicts": len(conflicts),
        }

    write_report(report, os.path.join(config.out_dir, config.report_name))
    return report


def write_report(report: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")
