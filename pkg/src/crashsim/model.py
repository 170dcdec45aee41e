"""Core data model: vehicles, kinematic states, trajectories, scenarios.

All quantities are SI (meters, seconds, kilograms, radians, joules);
headings use the mathematical convention (counterclockwise from +x) and
are kept in [-pi, pi).  Every type is immutable after construction and
safe to share between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import InvalidParameterError

Vec2 = tuple[float, float]
VehicleId = Union[str, int]

PI = math.pi
TWO_PI = 2.0 * math.pi

VEHICLE_CLASSES = ("car", "heavy", "custom")

# length_m, width_m, mass_kg per class; "custom" has no defaults on purpose.
CLASS_DEFAULTS = {
    "car": (4.0, 2.0, 1000.0),
    "heavy": (10.0, 2.5, 15000.0),
}


def wrap_angle(a: float) -> float:
    """Normalize an angle to [-pi, pi)."""
    r = (a + PI) % TWO_PI - PI
    if r >= PI:
        r -= TWO_PI
    return r


def id_sort_key(vehicle_id: VehicleId):
    """Canonical ordering key for vehicle ids (numeric ids sort numerically)."""
    s = str(vehicle_id)
    body = s[1:] if s[:1] in "+-" else s
    if body.isdigit():
        return (0, int(s), s)
    return (1, 0, s)


@dataclass(frozen=True, slots=True)
class VehicleAttributes:
    """Physical description of one vehicle."""

    id: VehicleId
    length: float
    width: float
    mass: float
    vehicle_class: str = "car"

    def __post_init__(self):
        if self.length <= 0 or self.width <= 0 or self.mass <= 0:
            raise InvalidParameterError(
                f"vehicle {self.id!r}: length, width and mass must be positive"
            )
        if self.vehicle_class not in VEHICLE_CLASSES:
            raise InvalidParameterError(
                f"vehicle {self.id!r}: unknown class {self.vehicle_class!r}"
            )


@dataclass(frozen=True, slots=True)
class KinematicState:
    """One trajectory sample: where a vehicle is and how it moves."""

    time: float
    position: Vec2
    speed: float
    heading: float

    def __post_init__(self):
        if self.speed < 0:
            raise InvalidParameterError(f"speed must be >= 0, got {self.speed}")
        object.__setattr__(self, "heading", wrap_angle(self.heading))


def velocity_vector(state: KinematicState) -> Vec2:
    """Velocity as a 2-D vector, speed * (cos heading, sin heading)."""
    return (state.speed * math.cos(state.heading), state.speed * math.sin(state.heading))


@dataclass(frozen=True, slots=True)
class Trajectory:
    """Time-ordered kinematic states of one vehicle.

    Monotone time is expected but not enforced here; validate_scenario
    reports violations as diagnostics instead of rejecting the data.
    """

    vehicle: VehicleAttributes
    states: tuple[KinematicState, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise InvalidParameterError(
                f"vehicle {self.vehicle.id!r}: trajectory needs at least one state"
            )

    @property
    def t_first(self) -> float:
        return self.states[0].time

    @property
    def t_last(self) -> float:
        return self.states[-1].time


def _interp_heading(h0: float, h1: float, u: float) -> float:
    # shortest angular arc
    d = wrap_angle(h1 - h0)
    return wrap_angle(h0 + d * u)


def state_at(trajectory: Trajectory, t: float) -> Optional[KinematicState]:
    """Interpolated state at time t, or None when the vehicle is absent.

    Exact at sample times; position and speed interpolate linearly,
    heading along the shortest angular arc.
    """
    states = trajectory.states
    n = len(states)
    if t < states[0].time or t > states[n - 1].time:
        return None
    lo, hi = 0, n - 1
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if states[mid].time <= t:
            lo = mid
        else:
            hi = mid
    a = states[lo]
    if t == a.time:
        return a
    b = states[lo + 1] if lo + 1 < n else a
    if t == b.time:
        return b
    u = (t - a.time) / (b.time - a.time)
    x = a.position[0] + (b.position[0] - a.position[0]) * u
    y = a.position[1] + (b.position[1] - a.position[1]) * u
    speed = a.speed + (b.speed - a.speed) * u
    heading = _interp_heading(a.heading, b.heading, u)
    return KinematicState(time=t, position=(x, y), speed=speed, heading=heading)


@dataclass(frozen=True, slots=True)
class StaticGeometry:
    """Roadside barriers (polylines) and rigid point obstacles (discs)."""

    barriers: tuple[tuple[Vec2, ...], ...] = ()
    obstacles: tuple[tuple[float, float, float], ...] = ()  # x, y, radius

    def __post_init__(self):
        barriers = tuple(tuple((float(x), float(y)) for x, y in poly) for poly in self.barriers)
        obstacles = tuple((float(x), float(y), float(r)) for x, y, r in self.obstacles)
        object.__setattr__(self, "barriers", barriers)
        object.__setattr__(self, "obstacles", obstacles)
        for i, poly in enumerate(self.barriers):
            if len(poly) < 2:
                raise InvalidParameterError(f"barrier {i} needs at least 2 points")
        for i, (_, _, r) in enumerate(self.obstacles):
            if r < 0:
                raise InvalidParameterError(f"obstacle {i} has negative radius")


@dataclass(frozen=True, slots=True)
class Bounds:
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    def __post_init__(self):
        if self.max_x < self.min_x or self.max_y < self.min_y:
            raise InvalidParameterError("bounds are inverted")

    def contains(self, p: Vec2) -> bool:
        return self.min_x <= p[0] <= self.max_x and self.min_y <= p[1] <= self.max_y


@dataclass(frozen=True, slots=True)
class Scenario:
    """Everything one analysis run needs: moving traffic plus fixed geometry."""

    trajectories: tuple[Trajectory, ...]
    geometry: StaticGeometry = field(default_factory=StaticGeometry)
    bounds: Optional[Bounds] = None

    def __post_init__(self):
        trajectories = tuple(
            sorted(self.trajectories, key=lambda tr: id_sort_key(tr.vehicle.id))
        )
        object.__setattr__(self, "trajectories", trajectories)
        ids = [str(tr.vehicle.id) for tr in trajectories]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise InvalidParameterError(f"duplicate vehicle ids: {dupes}")
        if self.bounds is None:
            object.__setattr__(self, "bounds", compute_bounds(trajectories, self.geometry))

    def trajectory(self, vehicle_id: VehicleId) -> Trajectory:
        key = str(vehicle_id)
        for tr in self.trajectories:
            if str(tr.vehicle.id) == key:
                return tr
        raise KeyError(vehicle_id)


def compute_bounds(
    trajectories: Sequence[Trajectory], geometry: StaticGeometry, margin: float = 5.0
) -> Bounds:
    xs: list[float] = []
    ys: list[float] = []
    for tr in trajectories:
        for s in tr.states:
            xs.append(s.position[0])
            ys.append(s.position[1])
    for poly in geometry.barriers:
        for x, y in poly:
            xs.append(x)
            ys.append(y)
    for x, y, _ in geometry.obstacles:
        xs.append(x)
        ys.append(y)
    if not xs:
        return Bounds(-margin, -margin, margin, margin)
    return Bounds(min(xs) - margin, min(ys) - margin, max(xs) + margin, max(ys) + margin)


@dataclass(frozen=True, slots=True)
class InjectionParams:
    """Driver-error sweep parameters.

    angles are deviations relative to the current heading, positive =
    leftward (counterclockwise); weights are the per-angle energy weights
    and, in Monte Carlo mode, the angle-draw distribution.  epsilon is the
    restitution coefficient, accepted for forward compatibility but only
    the fully inelastic value 0 is supported.
    """

    time_step: float = 1.0
    distraction_time: float = 5.0
    angles: tuple[float, ...] = (-math.radians(15.0), 0.0, math.radians(15.0))
    weights: tuple[float, ...] = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    sub_step: float = 0.05
    seed: Optional[int] = None
    epsilon: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if self.time_step <= 0:
            raise InvalidParameterError("time_step must be > 0")
        if self.distraction_time <= 0:
            raise InvalidParameterError("distraction_time must be > 0")
        if not (0 < self.sub_step <= self.time_step):
            raise InvalidParameterError("sub_step must satisfy 0 < sub_step <= time_step")
        if not self.angles:
            raise InvalidParameterError("at least one angle is required")
        if len(self.weights) != len(self.angles):
            raise InvalidParameterError("weights must match angles in length")
        if any(w < 0 for w in self.weights):
            raise InvalidParameterError("weights must be non-negative")
        if abs(math.fsum(self.weights) - 1.0) > 1e-9:
            raise InvalidParameterError("weights must sum to 1")
        if self.epsilon != 0.0:
            raise InvalidParameterError(
                "restitution epsilon != 0 is not supported; only the fully "
                "inelastic case is implemented"
            )


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One validation finding; diagnostics are data, never exceptions."""

    kind: str  # non-monotone-time | kinematic-inconsistency | out-of-bounds
    vehicle_id: Optional[VehicleId]
    time: Optional[float]
    message: str


# Implied speed may exceed the recorded sample mean by this factor before a
# kinematic-inconsistency diagnostic is raised; simulator exports are noisy.
KINEMATIC_TOLERANCE_FACTOR = 2.0
KINEMATIC_SPEED_SLACK = 0.5  # m/s, keeps zero-speed samples from false alarms


def validate_scenario(
    scenario: Scenario,
    tolerance_factor: float = KINEMATIC_TOLERANCE_FACTOR,
    speed_slack: float = KINEMATIC_SPEED_SLACK,
) -> list[Diagnostic]:
    """Collect invariant violations; an empty list means a clean scenario."""
    out: list[Diagnostic] = []
    for tr in scenario.trajectories:
        vid = tr.vehicle.id
        states = tr.states
        for a, b in zip(states, states[1:]):
            dt = b.time - a.time
            if dt <= 0:
                out.append(
                    Diagnostic(
                        "non-monotone-time",
                        vid,
                        b.time,
                        f"vehicle {vid!r}: time {b.time} does not increase past {a.time}",
                    )
                )
                continue
            dx = b.position[0] - a.position[0]
            dy = b.position[1] - a.position[1]
            implied = math.hypot(dx, dy) / dt
            recorded = 0.5 * (a.speed + b.speed)
            if implied > tolerance_factor * recorded + speed_slack:
                out.append(
                    Diagnostic(
                        "kinematic-inconsistency",
                        vid,
                        b.time,
                        f"vehicle {vid!r}: implied speed {implied:.2f} m/s over "
                        f"[{a.time}, {b.time}] vs recorded {recorded:.2f} m/s",
                    )
                )
        for s in states:
            if not scenario.bounds.contains(s.position):
                out.append(
                    Diagnostic(
                        "out-of-bounds",
                        vid,
                        s.time,
                        f"vehicle {vid!r}: position {s.position} outside bounds at t={s.time}",
                    )
                )
    return out


def derive_headings(points: Sequence[Vec2]) -> list[float]:
    """Headings from positions by central differences (one-sided at the ends).

    Zero displacement keeps the previous heading so stationary stretches
    stay well defined.
    """
    n = len(points)
    if n == 1:
        return [0.0]
    headings: list[float] = []
    prev = 0.0
    for i in range(n):
        j0 = max(0, i - 1)
        j1 = min(n - 1, i + 1)
        dx = points[j1][0] - points[j0][0]
        dy = points[j1][1] - points[j0][1]
        if dx == 0.0 and dy == 0.0:
            headings.append(prev)
        else:
            prev = math.atan2(dy, dx)
            headings.append(prev)
    return headings


def trajectory_from_samples(
    attrs: VehicleAttributes,
    samples: Iterable[tuple[float, float, float, float, Optional[float]]],
) -> Trajectory:
    """Build a trajectory from (time, x, y, speed, heading-or-None) rows.

    Rows are sorted by time (stable); missing headings are derived from
    the position sequence.
    """
    rows = sorted(samples, key=lambda r: r[0])
    if any(r[4] is None for r in rows):
        derived = derive_headings([(r[1], r[2]) for r in rows])
        rows = [
            (t, x, y, v, derived[i] if h is None else h)
            for i, (t, x, y, v, h) in enumerate(rows)
        ]
    states = tuple(
        KinematicState(time=t, position=(x, y), speed=v, heading=h)
        for t, x, y, v, h in rows
    )
    return Trajectory(vehicle=attrs, states=states)
