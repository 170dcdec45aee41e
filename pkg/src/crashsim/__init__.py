"""Driver-error crash simulation over recorded or synthesized trajectories.

Projects momentary driver distractions (straight, constant-speed
deviations) over the factual movements of all other vehicles and the
roadside geometry, detects the resulting potential crashes with
oriented-rectangle tests, scores them with inelastic collision dynamics,
and aggregates energy-based risk indicators that also see crashes
conflict-based measures cannot (barriers, obstacles, opposing traffic on
non-intersecting lanes).
"""

from ._kernels import backend_name
from .dynamics import (
    CrashKinematics,
    absorbed_energy,
    barrier_energy,
    combined_velocity,
    delta_v,
    injury_probability,
    obstacle_energy,
    reduced_mass,
)
from .errors import ConfigError, CrashsimError, InputFormatError, InvalidParameterError
from .geometry import (
    ContactResult,
    OrientedRect,
    first_contact,
    footprint,
    rect_hits_barrier,
    rect_hits_point_obstacle,
    rects_collide,
    segments_intersect,
)
from .indicators import (
    DangerGrid,
    ZSpec,
    aggregate_stats,
    danger_map,
    format_indicator_name,
    parse_indicator_name,
    threshold_view,
    z_value,
)
from .injection import CrashEvent, inject_all, inject_sampled, project_distraction, sample_injections
from .model import (
    Bounds,
    Diagnostic,
    InjectionParams,
    KinematicState,
    Scenario,
    StaticGeometry,
    Trajectory,
    VehicleAttributes,
    state_at,
    validate_scenario,
    velocity_vector,
)
from .ttc import ConflictEvent, count_conflicts, ttc_at

__version__ = "0.1.0"

__all__ = [
    "CrashKinematics",
    "absorbed_energy",
    "barrier_energy",
    "combined_velocity",
    "delta_v",
    "injury_probability",
    "obstacle_energy",
    "reduced_mass",
    "ConfigError",
    "CrashsimError",
    "InputFormatError",
    "InvalidParameterError",
    "ContactResult",
    "OrientedRect",
    "first_contact",
    "footprint",
    "rect_hits_barrier",
    "rect_hits_point_obstacle",
    "rects_collide",
    "segments_intersect",
    "DangerGrid",
    "ZSpec",
    "aggregate_stats",
    "danger_map",
    "format_indicator_name",
    "parse_indicator_name",
    "threshold_view",
    "z_value",
    "CrashEvent",
    "inject_all",
    "inject_sampled",
    "project_distraction",
    "sample_injections",
    "Bounds",
    "Diagnostic",
    "InjectionParams",
    "KinematicState",
    "Scenario",
    "StaticGeometry",
    "Trajectory",
    "VehicleAttributes",
    "state_at",
    "validate_scenario",
    "velocity_vector",
    "ConflictEvent",
    "count_conflicts",
    "ttc_at",
    "backend_name",
    "__version__",
]
