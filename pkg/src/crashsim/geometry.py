"""Oriented-rectangle collision tests and first-contact search.

Vehicles are axis-oriented rectangles aligned with their heading; contact
uses a closed-set convention (touching counts) and containment without
edge crossing counts as collision.  The search over a projected
trajectory is discrete sub-stepping, not swept volumes; halving the
sub-step changes a reported contact time by at most one sub-step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import InvalidParameterError
from .model import (
    KinematicState,
    StaticGeometry,
    Trajectory,
    Vec2,
    VehicleAttributes,
    id_sort_key,
    state_at,
)

CONTACT_VEHICLE = "vehicle"
CONTACT_BARRIER = "barrier"
CONTACT_OBSTACLE = "obstacle"

_KIND_NAMES = (CONTACT_VEHICLE, CONTACT_BARRIER, CONTACT_OBSTACLE)


@dataclass(frozen=True, slots=True)
class OrientedRect:
    center: Vec2
    half_length: float
    half_width: float
    heading: float

    def __post_init__(self):
        if self.half_length <= 0 or self.half_width <= 0:
            raise InvalidParameterError("rectangle half extents must be positive")

    def corners(self) -> tuple[Vec2, Vec2, Vec2, Vec2]:
        c = _kernels.active().rect_corners(*_unpack(self))
        return ((c[0], c[1]), (c[2], c[3]), (c[4], c[5]), (c[6], c[7]))


@dataclass(frozen=True, slots=True)
class ContactResult:
    """First contact of a projected footprint with the factual world."""

    time: float
    point: Vec2
    kind: str  # vehicle | barrier | obstacle
    target: object  # vehicle id, barrier index, or obstacle index
    barrier_normal: Optional[Vec2] = None


def _unpack(rect: OrientedRect):
    return (
        rect.center[0],
        rect.center[1],
        math.cos(rect.heading),
        math.sin(rect.heading),
        rect.half_length,
        rect.half_width,
    )


def footprint(state: KinematicState, attrs: VehicleAttributes) -> OrientedRect:
    """Ground rectangle of a vehicle at one kinematic state."""
    return OrientedRect(
        center=state.position,
        half_length=attrs.length / 2.0,
        half_width=attrs.width / 2.0,
        heading=state.heading,
    )


def segments_intersect(a1: Vec2, a2: Vec2, b1: Vec2, b2: Vec2) -> Optional[Vec2]:
    """Intersection point of two closed segments, or None.

    Collinear overlap returns the midpoint of the shared portion.
    """
    hit, x, y = _kernels.active().seg_intersect(
        a1[0], a1[1], a2[0], a2[1], b1[0], b1[1], b2[0], b2[1]
    )
    return (x, y) if hit else None


def rects_collide(a: OrientedRect, b: OrientedRect) -> bool:
    """True iff any side pair intersects or one rectangle contains the other."""
    return bool(_kernels.active().rects_collide(*_unpack(a), *_unpack(b)))


def rect_hits_barrier(
    rect: OrientedRect, polyline: Sequence[Vec2]
) -> Optional[tuple[Vec2, Vec2]]:
    """(contact point, unit normal) for the first struck segment, or None.

    The normal is the segment normal oriented toward the rectangle, i.e.
    against its approach direction.
    """
    if len(polyline) < 2:
        raise InvalidParameterError("barrier polyline needs at least 2 points")
    backend = _kernels.active()
    xs = [float(p[0]) for p in polyline]
    ys = [float(p[1]) for p in polyline]
    if backend.BACKEND != "pure":
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
    hit, px, py, nx, ny = backend.rect_barrier_contact(
        *_unpack(rect), xs, ys, 0, len(xs)
    )
    return ((px, py), (nx, ny)) if hit else None


def rect_hits_point_obstacle(
    rect: OrientedRect, center: Vec2, radius: float
) -> Optional[Vec2]:
    """Closest rectangle point when a disc obstacle touches the rectangle."""
    if radius < 0:
        raise InvalidParameterError("obstacle radius must be >= 0")
    hit, px, py = _kernels.active().rect_obstacle_contact(
        *_unpack(rect), center[0], center[1], radius
    )
    return (px, py) if hit else None


class WorldIndex:
    """Flattened, canonically ordered view of the factual world.

    Vehicles sort by id; barriers and obstacles keep their geometry index.
    Arrays are built once per scenario and shared read-only by every
    injection.  Both array (compiled) and list (pure) forms are kept so
    either backend runs at full speed on identical values.
    """

    def __init__(
        self,
        vehicles: Sequence[tuple[Trajectory, VehicleAttributes]],
        geometry: StaticGeometry,
    ):
        ordered = sorted(vehicles, key=lambda pair: id_sort_key(pair[1].id))
        self.trajectories = tuple(tr for tr, _ in ordered)
        self.attributes = tuple(at for _, at in ordered)
        self.ids = tuple(at.id for at in self.attributes)

        voff = [0]
        vt: list[float] = []
        vx: list[float] = []
        vy: list[float] = []
        vhdg: list[float] = []
        for tr in self.trajectories:
            for s in tr.states:
                vt.append(s.time)
                vx.append(s.position[0])
                vy.append(s.position[1])
                vhdg.append(s.heading)
            voff.append(len(vt))
        self.vhl = [at.length / 2.0 for at in self.attributes]
        self.vhw = [at.width / 2.0 for at in self.attributes]

        boff = [0]
        bx: list[float] = []
        by: list[float] = []
        for poly in geometry.barriers:
            for x, y in poly:
                bx.append(x)
                by.append(y)
            boff.append(len(bx))
        ox = [o[0] for o in geometry.obstacles]
        oy = [o[1] for o in geometry.obstacles]
        orad = [o[2] for o in geometry.obstacles]

        self._lists = (voff, vt, vx, vy, vhdg, self.vhl, self.vhw, boff, bx, by, ox, oy, orad)
        self._arrays = (
            np.asarray(voff, dtype=np.int64),
            np.asarray(vt, dtype=np.float64),
            np.asarray(vx, dtype=np.float64),
            np.asarray(vy, dtype=np.float64),
            np.asarray(vhdg, dtype=np.float64),
            np.asarray(self.vhl, dtype=np.float64),
            np.asarray(self.vhw, dtype=np.float64),
            np.asarray(boff, dtype=np.int64),
            np.asarray(bx, dtype=np.float64),
            np.asarray(by, dtype=np.float64),
            np.asarray(ox, dtype=np.float64),
            np.asarray(oy, dtype=np.float64),
            np.asarray(orad, dtype=np.float64),
        )

    def index_of(self, vehicle_id) -> int:
        """Position of a vehicle in canonical order, -1 when absent."""
        key = str(vehicle_id)
        for i, vid in enumerate(self.ids):
            if str(vid) == key:
                return i
        return -1

    def world_args(self, backend) -> tuple:
        return self._lists if backend.BACKEND == "pure" else self._arrays


def _projection_arrays(states: Sequence[KinematicState], backend):
    zt = [s.time for s in states]
    zx = [s.position[0] for s in states]
    zy = [s.position[1] for s in states]
    zch = [math.cos(s.heading) for s in states]
    zsh = [math.sin(s.heading) for s in states]
    if backend.BACKEND == "pure":
        return zt, zx, zy, zch, zsh
    return (
        np.asarray(zt, dtype=np.float64),
        np.asarray(zx, dtype=np.float64),
        np.asarray(zy, dtype=np.float64),
        np.asarray(zch, dtype=np.float64),
        np.asarray(zsh, dtype=np.float64),
    )


def first_contact_indexed(
    projected_states: Sequence[KinematicState],
    attrs: VehicleAttributes,
    world: WorldIndex,
) -> Optional[ContactResult]:
    """first_contact against a prebuilt WorldIndex (the hot path)."""
    backend = _kernels.active()
    zt, zx, zy, zch, zsh = _projection_arrays(projected_states, backend)
    exclude = world.index_of(attrs.id)
    args = world.world_args(backend)
    step, kind, idx, px, py, nx, ny = backend.scan_first_contact(
        zt, zx, zy, zch, zsh,
        attrs.length / 2.0, attrs.width / 2.0,
        *args[:7],
        exclude,
        *args[7:],
    )
    if step < 0:
        return None
    kind_name = _KIND_NAMES[kind]
    target = world.ids[idx] if kind == 0 else int(idx)
    normal = (nx, ny) if kind == 1 else None
    return ContactResult(
        time=projected_states[step].time,
        point=(px, py),
        kind=kind_name,
        target=target,
        barrier_normal=normal,
    )


def first_contact(
    projected_states: Sequence[KinematicState],
    attrs: VehicleAttributes,
    others: Sequence[tuple[Trajectory, VehicleAttributes]],
    geometry: StaticGeometry,
    sub_step: float,
) -> Optional[ContactResult]:
    """Earliest sub-step at which the projected footprint hits the world.

    others holds the factual trajectories (the projecting vehicle's own
    trajectory is excluded by id); ties at one sub-step resolve vehicle <
    barrier < obstacle, then ascending id / geometry index.  The instant
    of injection itself (elapsed 0) is not tested.
    """
    if sub_step <= 0:
        raise InvalidParameterError("sub_step must be > 0")
    if len(projected_states) < 2:
        return None
    world = WorldIndex(others, geometry)
    return first_contact_indexed(projected_states, attrs, world)


def partner_state_at(world: WorldIndex, index: int, t: float) -> KinematicState:
    """Interpolated factual state of a world vehicle; contact times always hit."""
    st = state_at(world.trajectories[index], t)
    if st is None:
        raise RuntimeError(
            f"vehicle {world.ids[index]!r} has no state at contact time {t}"
        )
    return st
