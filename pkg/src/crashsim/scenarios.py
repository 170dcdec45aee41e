"""Synthetic desk-scale scenarios and their closed-form energy oracles.

The corridor generators reproduce the two analytically solvable layouts
(straight wall, tree row); the opposing-flow generator builds the
two-lane undivided road used to contrast energy indicators against
conflict counting.  All randomness is seeded and bit-reproducible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InvalidParameterError
from .model import (
    KinematicState,
    Scenario,
    StaticGeometry,
    Trajectory,
    VehicleAttributes,
)

DEFAULT_CAR = dict(length=4.0, width=2.0, mass=1000.0)


def _sample_times(t_first: float, duration: float, dt: float) -> list[float]:
    m = int(math.floor(duration / dt + 1e-9))
    times = [t_first + i * dt for i in range(m + 1)]
    if times[-1] < t_first + duration - 1e-12:
        times.append(t_first + duration)
    else:
        times[-1] = t_first + duration
    return times


def _uniform_trajectory(
    vehicle: VehicleAttributes,
    start: tuple[float, float],
    heading: float,
    speed: float,
    duration: float,
    dt: float,
    t_first: float = 0.0,
) -> Trajectory:
    vx = speed * math.cos(heading)
    vy = speed * math.sin(heading)
    states = tuple(
        KinematicState(
            time=t,
            position=(start[0] + vx * (t - t_first), start[1] + vy * (t - t_first)),
            speed=speed,
            heading=heading,
        )
        for t in _sample_times(t_first, duration, dt)
    )
    return Trajectory(vehicle=vehicle, states=states)


def wall_corridor(
    length: float = 1000.0,
    speed: float = 25.0,
    mass: float = 1000.0,
    lane_offsets: Sequence[float] = (0.0,),
    wall_offset: float = 3.5,
    sample_dt: float = 1.0,
    overhang: float = 0.0,
) -> Scenario:
    """Straight road between two continuous walls at +-wall_offset.

    One constant-speed vehicle per lane offset runs the full length; the
    walls can extend overhang meters past both ends so deviated
    projections near the exit still find them.
    """
    if length <= 0 or speed <= 0 or wall_offset <= 0:
        raise InvalidParameterError("length, speed and wall_offset must be positive")
    geometry = StaticGeometry(
        barriers=(
            ((-overhang, wall_offset), (length + overhang, wall_offset)),
            ((-overhang, -wall_offset), (length + overhang, -wall_offset)),
        )
    )
    duration = length / speed
    trajectories = tuple(
        _uniform_trajectory(
            VehicleAttributes(id=f"V{i}", mass=mass, **{k: DEFAULT_CAR[k] for k in ("length", "width")}),
            start=(0.0, y),
            heading=0.0,
            speed=speed,
            duration=duration,
            dt=sample_dt,
        )
        for i, y in enumerate(lane_offsets)
    )
    return Scenario(trajectories=trajectories, geometry=geometry)


def tree_corridor(
    length: float = 1000.0,
    speed: float = 25.0,
    mass: float = 1000.0,
    tree_spacing: float = 5.0,
    tree_offset: float = 3.5,
    tree_radius: float = 0.25,
    lane_offsets: Sequence[float] = (0.0,),
    sample_dt: float = 1.0,
    overhang: float = 0.0,
) -> Scenario:
    """Straight road with point-obstacle trees on both sides, no barrier."""
    if length <= 0 or speed <= 0 or tree_spacing <= 0 or tree_offset <= 0:
        raise InvalidParameterError(
            "length, speed, tree_spacing and tree_offset must be positive"
        )
    if tree_radius < 0:
        raise InvalidParameterError("tree_radius must be >= 0")
    n = int(math.floor((length + 2.0 * overhang) / tree_spacing + 1e-9)) + 1
    obstacles = []
    for k in range(n):
        x = -overhang + k * tree_spacing
        obstacles.append((x, tree_offset, tree_radius))
        obstacles.append((x, -tree_offset, tree_radius))
    duration = length / speed
    trajectories = tuple(
        _uniform_trajectory(
            VehicleAttributes(id=f"V{i}", mass=mass, **{k: DEFAULT_CAR[k] for k in ("length", "width")}),
            start=(0.0, y),
            heading=0.0,
            speed=speed,
            duration=duration,
            dt=sample_dt,
        )
        for i, y in enumerate(lane_offsets)
    )
    return Scenario(trajectories=trajectories, geometry=StaticGeometry(obstacles=tuple(obstacles)))


@dataclass(frozen=True, slots=True)
class LaneDeviation:
    """Mid-road geometric bend: both lanes turn by angle at position."""

    position: float
    angle: float


def _offset_polyline(
    length: float, offset: float, deviation: Optional[LaneDeviation]
) -> list[tuple[float, float]]:
    if deviation is None:
        return [(0.0, offset), (length, offset)]
    ang = deviation.angle
    miter_x = deviation.position - offset * math.tan(ang / 2.0)
    if not 0.0 < miter_x < length:
        raise InvalidParameterError("deviation position must fall inside the road")
    seg2 = length - miter_x
    end = (miter_x + seg2 * math.cos(ang), offset + seg2 * math.sin(ang))
    return [(0.0, offset), (miter_x, offset), end]


def _walk_polyline(poly: Sequence[tuple[float, float]], s: float):
    """Point and heading at arclength s (clamped to the polyline span)."""
    remaining = s
    last = len(poly) - 2
    for i in range(len(poly) - 1):
        x1, y1 = poly[i]
        x2, y2 = poly[i + 1]
        dx = x2 - x1
        dy = y2 - y1
        seg = math.hypot(dx, dy)
        if remaining <= seg or i == last:
            u = remaining / seg
            return (x1 + dx * u, y1 + dy * u), math.atan2(dy, dx)
        remaining -= seg
    raise AssertionError("unreachable")


def _polyline_length(poly: Sequence[tuple[float, float]]) -> float:
    return math.fsum(
        math.hypot(x2 - x1, y2 - y1) for (x1, y1), (x2, y2) in zip(poly, poly[1:])
    )


def opposing_flow(
    length: float = 200.0,
    lateral_gap: float = 3.5,
    flow_per_dir: float = 500.0,
    speed: float = 50.0 / 3.6,
    seed: int = 0,
    deviation: Optional[LaneDeviation] = None,
    duration: float = 120.0,
    sample_dt: float = 1.0,
    min_headway: float = 2.0,
    mass: float = 1000.0,
) -> Scenario:
    """Two opposing constant-speed streams on parallel lanes.

    Entry headways are seeded-exponential at flow_per_dir vehicles/hour
    with a floor of min_headway seconds; an optional deviation bends both
    lanes mid-road.  Lane centers sit lateral_gap apart.
    """
    if length <= 0 or speed <= 0 or lateral_gap <= 0:
        raise InvalidParameterError("length, speed and lateral_gap must be positive")
    if flow_per_dir <= 0:
        raise InvalidParameterError("flow must be > 0")
    if duration <= 0:
        raise InvalidParameterError("duration must be > 0")
    rate = flow_per_dir / 3600.0
    half = lateral_gap / 2.0
    east_path = _offset_polyline(length, -half, deviation)
    west_path = list(reversed(_offset_polyline(length, half, deviation)))
    trajectories = []
    for label, path in (("E", east_path), ("W", west_path)):
        rng = random.Random(f"crashsim:{seed}:{label}")
        span = _polyline_length(path)
        transit = span / speed
        t_entry = 0.0
        index = 0
        while True:
            gap = rng.expovariate(rate)
            t_entry += gap if gap > min_headway else min_headway
            if t_entry > duration:
                break
            vehicle = VehicleAttributes(
                id=f"{label}{index:03d}",
                mass=mass,
                **{k: DEFAULT_CAR[k] for k in ("length", "width")},
            )
            states = []
            for t in _sample_times(t_entry, transit, sample_dt):
                pos, heading = _walk_polyline(path, speed * (t - t_entry))
                states.append(
                    KinematicState(time=t, position=pos, speed=speed, heading=heading)
                )
            trajectories.append(Trajectory(vehicle=vehicle, states=tuple(states)))
            index += 1
    return Scenario(trajectories=tuple(trajectories), geometry=StaticGeometry())


def barrier_corridor_raw_energy(
    length: float, speed: float, mass: float, angle: float, time_step: float
) -> float:
    """Unweighted closed-form total for the wall corridor: positions times
    two side crashes, each the kinetic energy of the wall-normal velocity
    component."""
    if length <= 0 or speed <= 0 or mass <= 0 or time_step <= 0:
        raise InvalidParameterError("length, speed, mass, time_step must be positive")
    positions = length / (speed * time_step)
    vn = speed * math.sin(angle)
    return positions * 2.0 * 0.5 * mass * vn * vn


def barrier_corridor_energy(
    length: float,
    speed: float,
    mass: float,
    angle: float,
    time_step: float,
    straight_weight,
) -> float:
    """Weighted wall-corridor total: each side crash carries (1 - w) / 2."""
    w = float(straight_weight)
    side_factor = (1.0 - w) / 2.0
    return barrier_corridor_raw_energy(length, speed, mass, angle, time_step) * side_factor


def obstacle_corridor_raw_energy(
    length: float, speed: float, mass: float, time_step: float
) -> float:
    """Unweighted closed-form total for the tree corridor (full kinetic energy)."""
    if length <= 0 or speed <= 0 or mass <= 0 or time_step <= 0:
        raise InvalidParameterError("length, speed, mass, time_step must be positive")
    positions = length / (speed * time_step)
    return positions * 2.0 * 0.5 * mass * speed * speed


def obstacle_corridor_energy(
    length: float,
    speed: float,
    mass: float,
    time_step: float,
    straight_weight,
) -> float:
    """Weighted tree-corridor total: each side crash carries (1 - w) / 2."""
    w = float(straight_weight)
    side_factor = (1.0 - w) / 2.0
    return obstacle_corridor_raw_energy(length, speed, mass, time_step) * side_factor
