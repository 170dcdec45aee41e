"""Driver-error injection: project distracted-driver trajectories and
record the resulting potential crashes.

For every vehicle, every injection time and every deviation angle, the
vehicle is advanced at constant speed on a straight line for the
distraction time while everyone else follows their factual trajectory;
the first footprint contact ends the subsimulation and is scored with
the crash-dynamics closed forms.  Other drivers never react and
projections never meet other projections.

Injection times are anchored at each vehicle's first sample and step by
time_step while strictly before the vehicle's last sample (a vehicle is
never distracted at the instant it leaves the network).  Results are
canonically sorted by (injection time, vehicle id, angle index), so
output is identical regardless of worker count or input ordering.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import dynamics
from .errors import InvalidParameterError
from .geometry import (
    CONTACT_VEHICLE,
    WorldIndex,
    first_contact_indexed,
    partner_state_at,
)
from .model import (
    InjectionParams,
    KinematicState,
    Scenario,
    Trajectory,
    Vec2,
    VehicleId,
    id_sort_key,
    state_at,
    velocity_vector,
)


@dataclass(frozen=True, slots=True)
class CrashEvent:
    """One simulated potential crash."""

    injection_time: float
    vehicle_id: VehicleId
    angle: float
    angle_index: int
    partner_kind: str  # vehicle | barrier | obstacle
    partner_id: object  # vehicle id, or geometry index
    contact_time: float
    elapsed: float
    contact_point: Vec2
    vehicle_velocity: Vec2
    partner_velocity: Vec2
    energy_total: float
    energy_1: float
    energy_2: float
    delta_v12_mag: float


def event_sort_key(event: CrashEvent):
    return (event.injection_time, id_sort_key(event.vehicle_id), event.angle_index)


def project_distraction(
    state0: KinematicState, delta_angle: float, duration: float, sub_step: float
) -> list[KinematicState]:
    """Straight constant-speed projection sampled every sub_step.

    States run from the injection instant to the full distraction time;
    the final sample lands exactly on the duration even when it is not a
    step multiple.
    """
    if duration <= 0:
        raise InvalidParameterError("duration must be > 0")
    if sub_step <= 0:
        raise InvalidParameterError("sub_step must be > 0")
    heading = state0.heading + delta_angle
    speed = state0.speed
    vx = speed * math.cos(heading)
    vy = speed * math.sin(heading)
    x0, y0 = state0.position
    t0 = state0.time
    m = int(math.floor(duration / sub_step + 1e-9))
    elapsed = [i * sub_step for i in range(m + 1)]
    if elapsed[-1] < duration - 1e-12:
        elapsed.append(duration)
    else:
        elapsed[-1] = duration
    return [
        KinematicState(
            time=t0 + e,
            position=(x0 + vx * e, y0 + vy * e),
            speed=speed,
            heading=heading,
        )
        for e in elapsed
    ]


def _scenario_world(scenario: Scenario) -> WorldIndex:
    return WorldIndex(
        [(tr, tr.vehicle) for tr in scenario.trajectories], scenario.geometry
    )


def injection_times(trajectory: Trajectory, time_step: float) -> list[float]:
    """Per-vehicle injection grid: first sample + k*time_step, before exit."""
    times = []
    k = 0
    t_first = trajectory.t_first
    t_last = trajectory.t_last
    while True:
        t0 = t_first + k * time_step
        if t0 >= t_last:
            break
        times.append(t0)
        k += 1
    return times


def _events_for_injection(
    world: WorldIndex,
    params: InjectionParams,
    vehicle_index: int,
    t0: float,
    angle_indices: Sequence[int],
) -> list[CrashEvent]:
    trajectory = world.trajectories[vehicle_index]
    attrs = world.attributes[vehicle_index]
    state0 = state_at(trajectory, t0)
    if state0 is None:
        raise RuntimeError(f"no state for vehicle {attrs.id!r} at t0={t0}")
    events = []
    for ai in angle_indices:
        zstates = project_distraction(
            state0, params.angles[ai], params.distraction_time, params.sub_step
        )
        contact = first_contact_indexed(zstates, attrs, world)
        if contact is None:
            continue
        zvel = velocity_vector(zstates[0])
        if contact.kind == CONTACT_VEHICLE:
            pidx = world.index_of(contact.target)
            pstate = partner_state_at(world, pidx, contact.time)
            pvel = velocity_vector(pstate)
            ck = dynamics.absorbed_energy(
                attrs.mass, zvel, world.attributes[pidx].mass, pvel
            )
            energy_total = ck.absorbed_total
            energy_1 = ck.absorbed_1
            energy_2 = ck.absorbed_2
            dv12 = ck.delta_v12_mag
        else:
            pvel = (0.0, 0.0)
            if contact.barrier_normal is not None:
                energy_1 = dynamics.barrier_energy(
                    attrs.mass, zvel, contact.barrier_normal
                )
            else:
                energy_1 = dynamics.obstacle_energy(attrs.mass, state0.speed)
            energy_total = energy_1
            energy_2 = 0.0
            dv12 = state0.speed
        events.append(
            CrashEvent(
                injection_time=t0,
                vehicle_id=attrs.id,
                angle=params.angles[ai],
                angle_index=ai,
                partner_kind=contact.kind,
                partner_id=contact.target,
                contact_time=contact.time,
                elapsed=contact.time - t0,
                contact_point=contact.point,
                vehicle_velocity=zvel,
                partner_velocity=pvel,
                energy_total=energy_total,
                energy_1=energy_1,
                energy_2=energy_2,
                delta_v12_mag=dv12,
            )
        )
    return events


# worker-process globals, set once per process by _init_worker
_POOL_WORLD: Optional[WorldIndex] = None
_POOL_PARAMS: Optional[InjectionParams] = None


def _init_worker(scenario: Scenario, params: InjectionParams) -> None:
    global _POOL_WORLD, _POOL_PARAMS
    _POOL_WORLD = _scenario_world(scenario)
    _POOL_PARAMS = params


def _run_task(task) -> list[CrashEvent]:
    vehicle_index, t0, angle_indices = task
    return _events_for_injection(_POOL_WORLD, _POOL_PARAMS, vehicle_index, t0, angle_indices)


def _execute(
    scenario: Scenario, params: InjectionParams, tasks: list, workers: int
) -> list[CrashEvent]:
    events: list[CrashEvent] = []
    if workers <= 1 or len(tasks) < 2:
        world = _scenario_world(scenario)
        for vehicle_index, t0, angle_indices in tasks:
            events.extend(
                _events_for_injection(world, params, vehicle_index, t0, angle_indices)
            )
    else:
        import multiprocessing

        chunk = max(1, len(tasks) // (workers * 8))
        with multiprocessing.Pool(
            workers, initializer=_init_worker, initargs=(scenario, params)
        ) as pool:
            for batch in pool.map(_run_task, tasks, chunksize=chunk):
                events.extend(batch)
    events.sort(key=event_sort_key)
    return events


def inject_all(
    scenario: Scenario, params: InjectionParams, workers: int = 1
) -> list[CrashEvent]:
    """Deterministic sweep: every vehicle, every grid time, every angle."""
    world = _scenario_world(scenario)
    all_angles = tuple(range(len(params.angles)))
    tasks = []
    for vi, trajectory in enumerate(world.trajectories):
        for t0 in injection_times(trajectory, params.time_step):
            tasks.append((vi, t0, all_angles))
    return _execute(scenario, params, tasks, workers)


def sample_injections(
    params: InjectionParams,
    trajectory_span: tuple[float, float],
    seed,
    rate_per_s: float,
) -> list[tuple[float, int]]:
    """Poisson-process injection schedule for one vehicle span.

    Times arrive at rate_per_s over [t_first, t_last); each carries an
    angle index drawn from the params weights.  Reproducible from seed.
    """
    if rate_per_s <= 0:
        raise InvalidParameterError("distraction rate must be > 0")
    t_first, t_last = trajectory_span
    rng = random.Random(f"crashsim:{seed}")
    schedule: list[tuple[float, int]] = []
    t = t_first
    while True:
        t += rng.expovariate(rate_per_s)
        if t >= t_last:
            break
        u = rng.random()
        cum = 0.0
        ai = len(params.weights) - 1
        for i, w in enumerate(params.weights):
            cum += w
            if u < cum:
                ai = i
                break
        schedule.append((t, ai))
    return schedule


def inject_sampled(
    scenario: Scenario,
    params: InjectionParams,
    rate_per_s: float,
    workers: int = 1,
) -> list[CrashEvent]:
    """Monte Carlo mode: seeded random injection times and angles."""
    if params.seed is None:
        raise InvalidParameterError("Monte Carlo mode requires a seed")
    world = _scenario_world(scenario)
    tasks = []
    for vi, trajectory in enumerate(world.trajectories):
        span = (trajectory.t_first, trajectory.t_last)
        schedule = sample_injections(
            params, span, f"{params.seed}:{world.ids[vi]}", rate_per_s
        )
        for t0, ai in schedule:
            tasks.append((vi, t0, (ai,)))
    return _execute(scenario, params, tasks, workers)
