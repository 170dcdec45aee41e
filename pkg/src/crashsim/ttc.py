"""Minimal time-to-collision conflict counter.

Classic constant-velocity TTC over vehicle footprints: two vehicles are
in conflict when, keeping their current velocity vectors, their
rectangles would touch within the threshold.  Used as the comparison
baseline that reports zero conflicts on non-intersecting opposing-lane
traffic where the energy indicators see substantial risk.  This is a
simplified counter, not a reimplementation of any particular conflict
package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import _kernels
from .errors import InvalidParameterError
from .model import (
    KinematicState,
    Scenario,
    VehicleAttributes,
    VehicleId,
    id_sort_key,
    state_at,
    velocity_vector,
)


@dataclass(frozen=True, slots=True)
class ConflictEvent:
    """One merged conflict encounter between a vehicle pair."""

    time: float
    vehicle_a: VehicleId
    vehicle_b: VehicleId
    ttc: float


def ttc_at(
    state_a: KinematicState,
    attrs_a: VehicleAttributes,
    state_b: KinematicState,
    attrs_b: VehicleAttributes,
    horizon: float,
    sub_step: float = 0.05,
) -> Optional[float]:
    """Smallest t in (0, horizon] at which the constant-velocity footprints
    touch, scanned at sub_step resolution; None when they never do."""
    if horizon <= 0:
        raise InvalidParameterError("horizon must be > 0")
    if sub_step <= 0:
        raise InvalidParameterError("sub_step must be > 0")
    n_steps = int(math.floor(horizon / sub_step + 1e-9))
    extra = 0.0
    if n_steps * sub_step < horizon - 1e-12:
        extra = horizon
    va = velocity_vector(state_a)
    vb = velocity_vector(state_b)
    t = _kernels.active().scan_const_velocity(
        state_a.position[0], state_a.position[1], va[0], va[1],
        math.cos(state_a.heading), math.sin(state_a.heading),
        attrs_a.length / 2.0, attrs_a.width / 2.0,
        state_b.position[0], state_b.position[1], vb[0], vb[1],
        math.cos(state_b.heading), math.sin(state_b.heading),
        attrs_b.length / 2.0, attrs_b.width / 2.0,
        sub_step, n_steps, extra,
    )
    return t if t >= 0.0 else None


def count_conflicts(
    scenario: Scenario,
    threshold: float,
    sub_step: float = 0.05,
    time_step: float = 1.0,
) -> list[ConflictEvent]:
    """Conflicts with TTC at or below the threshold, one per encounter.

    Pairs are evaluated on a shared grid anchored at the earliest sample
    time; consecutive conflict steps of the same pair merge into a single
    event keeping the minimum TTC and its first occurrence time.
    """
    if threshold <= 0:
        raise InvalidParameterError("threshold must be > 0")
    trajectories = scenario.trajectories
    if not trajectories:
        return []
    t_min = min(tr.t_first for tr in trajectories)
    t_max = max(tr.t_last for tr in trajectories)
    events: list[ConflictEvent] = []
    pairs = combinations(range(len(trajectories)), 2)
    for ia, ib in pairs:
        tr_a = trajectories[ia]
        tr_b = trajectories[ib]
        run_time = None
        run_min = None
        k = 0
        while True:
            t = t_min + k * time_step
            if t > t_max:
                break
            k += 1
            sa = state_at(tr_a, t)
            sb = state_at(tr_b, t)
            ttc = None
            if sa is not None and sb is not None:
                ttc = ttc_at(sa, tr_a.vehicle, sb, tr_b.vehicle, threshold, sub_step)
            if ttc is not None:
                if run_time is None:
                    run_time = t
                    run_min = ttc
                elif ttc < run_min:
                    run_min = ttc
            elif run_time is not None:
                events.append(
                    ConflictEvent(run_time, tr_a.vehicle.id, tr_b.vehicle.id, run_min)
                )
                run_time = None
                run_min = None
        if run_time is not None:
            events.append(
                ConflictEvent(run_time, tr_a.vehicle.id, tr_b.vehicle.id, run_min)
            )
    events.sort(key=lambda e: (e.time, id_sort_key(e.vehicle_a), id_sort_key(e.vehicle_b)))
    return events
