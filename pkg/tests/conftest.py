import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from crashsim.model import (
    KinematicState,
    Scenario,
    StaticGeometry,
    Trajectory,
    VehicleAttributes,
)


def make_state(t=0.0, x=0.0, y=0.0, speed=0.0, heading=0.0):
    return KinematicState(time=t, position=(x, y), speed=speed, heading=heading)


def make_vehicle(vid="v", length=4.0, width=2.0, mass=1000.0):
    return VehicleAttributes(id=vid, length=length, width=width, mass=mass)


def uniform_trajectory(vid, x0, y0, speed, heading, t0, t1, dt=1.0, **attrs):
    vehicle = make_vehicle(vid, **attrs)
    states = []
    t = t0
    vx = speed * math.cos(heading)
    vy = speed * math.sin(heading)
    while t <= t1 + 1e-9:
        states.append(
            KinematicState(
                time=t,
                position=(x0 + vx * (t - t0), y0 + vy * (t - t0)),
                speed=speed,
                heading=heading,
            )
        )
        t += dt
    return Trajectory(vehicle=vehicle, states=tuple(states))


def rotate_point(p, angle, shift=(0.0, 0.0)):
    c, s = math.cos(angle), math.sin(angle)
    return (p[0] * c - p[1] * s + shift[0], p[0] * s + p[1] * c + shift[1])


def transform_scenario(scenario: Scenario, angle: float, shift=(0.0, 0.0)) -> Scenario:
    """Rigidly rotate and translate every trajectory and geometry element."""
    trajectories = []
    for tr in scenario.trajectories:
        states = tuple(
            KinematicState(
                time=s.time,
                position=rotate_point(s.position, angle, shift),
                speed=s.speed,
                heading=s.heading + angle,
            )
            for s in tr.states
        )
        trajectories.append(Trajectory(vehicle=tr.vehicle, states=states))
    geometry = StaticGeometry(
        barriers=tuple(
            tuple(rotate_point(p, angle, shift) for p in poly)
            for poly in scenario.geometry.barriers
        ),
        obstacles=tuple(
            (*rotate_point((x, y), angle, shift), r)
            for x, y, r in scenario.geometry.obstacles
        ),
    )
    return Scenario(trajectories=tuple(trajectories), geometry=geometry)
