"""Two-body inelastic collision quantities and single-vehicle impact energies.

Momentum conservation gives the common post-impact velocity; the absorbed
energy is the kinetic-energy drop, equal to half the reduced mass times
the squared relative impact speed.  Barrier strikes count only the
velocity component perpendicular to the wall; rigid point obstacles
absorb the full kinetic energy.  Only the fully inelastic case is
implemented (restitution 0); partially elastic impacts are rejected at
parameter validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError
from .model import Vec2


@dataclass(frozen=True, slots=True)
class CrashKinematics:
    """Closed-form outcome of one two-body inelastic impact."""

    combined_velocity: Vec2
    delta_v1: Vec2
    delta_v2: Vec2
    delta_v12_mag: float
    absorbed_total: float
    absorbed_1: float
    absorbed_2: float
    reduced_mass: float
    kinetic_before: float
    kinetic_after: float


def _check_masses(m1: float, m2: float) -> None:
    if m1 <= 0 or m2 <= 0:
        raise InvalidParameterError(f"masses must be positive, got {m1}, {m2}")


def combined_velocity(m1: float, v1: Vec2, m2: float, v2: Vec2) -> Vec2:
    """Momentum-conserving common velocity of the joined bodies."""
    _check_masses(m1, m2)
    total = m1 + m2
    return (
        (m1 * v1[0] + m2 * v2[0]) / total,
        (m1 * v1[1] + m2 * v2[1]) / total,
    )


def delta_v(m1: float, v1: Vec2, m2: float, v2: Vec2) -> tuple[Vec2, Vec2]:
    """Per-vehicle velocity change across the impact (always antiparallel)."""
    vbar = combined_velocity(m1, v1, m2, v2)
    return (
        (vbar[0] - v1[0], vbar[1] - v1[1]),
        (vbar[0] - v2[0], vbar[1] - v2[1]),
    )


def reduced_mass(m1: float, m2: float) -> float:
    _check_masses(m1, m2)
    return m1 * m2 / (m1 + m2)


def absorbed_energy(m1: float, v1: Vec2, m2: float, v2: Vec2) -> CrashKinematics:
    """All impact quantities for one inelastic two-body crash.

    The absorbed total is computed both as the kinetic-energy drop and as
    half the reduced mass times the squared relative speed; the two
    closed forms are asserted to agree.
    """
    _check_masses(m1, m2)
    vbar = combined_velocity(m1, v1, m2, v2)
    dv1 = (vbar[0] - v1[0], vbar[1] - v1[1])
    dv2 = (vbar[0] - v2[0], vbar[1] - v2[1])
    rel_x = v2[0] - v1[0]
    rel_y = v2[1] - v1[1]
    dv12 = math.hypot(rel_x, rel_y)
    m_r = m1 * m2 / (m1 + m2)
    k_before = 0.5 * m1 * (v1[0] * v1[0] + v1[1] * v1[1]) + 0.5 * m2 * (
        v2[0] * v2[0] + v2[1] * v2[1]
    )
    k_after = 0.5 * (m1 + m2) * (vbar[0] * vbar[0] + vbar[1] * vbar[1])
    total = 0.5 * m_r * dv12 * dv12
    drop = k_before - k_after
    scale = max(k_before, 1.0)
    if abs(total - drop) > 1e-9 * scale:
        raise AssertionError(
            f"energy closed forms disagree: {total} vs {drop} (before={k_before})"
        )
    return CrashKinematics(
        combined_velocity=vbar,
        delta_v1=dv1,
        delta_v2=dv2,
        delta_v12_mag=dv12,
        absorbed_total=total,
        absorbed_1=0.5 * m1 * (dv1[0] * dv1[0] + dv1[1] * dv1[1]),
        absorbed_2=0.5 * m2 * (dv2[0] * dv2[0] + dv2[1] * dv2[1]),
        reduced_mass=m_r,
        kinetic_before=k_before,
        kinetic_after=k_after,
    )


def split_delta_v(m1: float, m2: float, delta_v12_mag: float) -> tuple[float, float]:
    """Per-vehicle velocity-change magnitudes from the relative impact speed.

    The split is inversely proportional to mass, so the lighter vehicle
    takes the larger velocity change.
    """
    _check_masses(m1, m2)
    total = m1 + m2
    return (m2 / total * delta_v12_mag, m1 / total * delta_v12_mag)


def injury_probability(delta_v_mag: float, alpha: float, k: float) -> float:
    """Power-law probability of death or injury from a velocity change.

    alpha and k are severity-model constants with no universal defaults;
    callers must supply them explicitly.  The value is clamped at 1.
    """
    if alpha <= 0 or k <= 0:
        raise InvalidParameterError("alpha and k must be positive")
    if delta_v_mag < 0:
        raise InvalidParameterError("delta_v_mag must be >= 0")
    return min(1.0, (delta_v_mag / alpha) ** k)


def barrier_energy(mass: float, v: Vec2, normal: Vec2) -> float:
    """Kinetic energy carried by the velocity component normal to a wall."""
    if mass <= 0:
        raise InvalidParameterError("mass must be positive")
    norm = math.hypot(normal[0], normal[1])
    if abs(norm - 1.0) > 1e-9:
        raise InvalidParameterError(f"normal must be unit length, |n|={norm}")
    vn = v[0] * normal[0] + v[1] * normal[1]
    return 0.5 * mass * vn * vn


def obstacle_energy(mass: float, speed: float) -> float:
    """Full kinetic energy, absorbed when striking a rigid point obstacle."""
    if mass <= 0:
        raise InvalidParameterError("mass must be positive")
    if speed < 0:
        raise InvalidParameterError("speed must be >= 0")
    return 0.5 * mass * speed * speed
