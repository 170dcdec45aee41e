"""Energy-based risk indicators aggregated from crash events.

The headline indicator weights straight-projection crash energy by w and
each side deviation by (1-w)/2, written "Z<seconds>-<degrees>-<w>"
(e.g. Z5-15-1/3, Z3-15-0.80).  Aggregation always walks events in
canonical order so parallel producers cannot change a single output bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidParameterError
from .injection import CrashEvent
from .model import Vec2

ANGLE_FRONT = "front"
ANGLE_LEFT = "left"
ANGLE_RIGHT = "right"

_ANGLE_EPS = 1e-12


def classify_angle(angle: float) -> str:
    """front, left (positive, counterclockwise) or right (negative)."""
    if abs(angle) <= _ANGLE_EPS:
        return ANGLE_FRONT
    return ANGLE_LEFT if angle > 0 else ANGLE_RIGHT


@dataclass(frozen=True, slots=True)
class ZSpec:
    """Indicator parameters: distraction time, side angle, straight weight."""

    distraction_time: float
    angle: float  # magnitude of the side deviation, radians
    straight_weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "straight_weight", Fraction(self.straight_weight))
        if self.distraction_time <= 0:
            raise InvalidParameterError("distraction_time must be > 0")
        if self.angle <= 0:
            raise InvalidParameterError("side angle must be > 0")
        if not 0 <= self.straight_weight <= 1:
            raise InvalidParameterError("straight weight must be in [0, 1]")

    @property
    def side_weight(self) -> Fraction:
        return (1 - self.straight_weight) / 2

    @property
    def name(self) -> str:
        return format_indicator_name(self)


def _format_number(x: float) -> str:
    if abs(x - round(x)) < 1e-9:
        return str(int(round(x)))
    return repr(x)


def _format_weight(w: Fraction) -> str:
    if 100 % w.denominator == 0:
        return f"{float(w):.2f}"
    return f"{w.numerator}/{w.denominator}"


def format_indicator_name(spec: ZSpec) -> str:
    deg = math.degrees(spec.angle)
    return f"Z{_format_number(spec.distraction_time)}-{_format_number(deg)}-" f"{_format_weight(spec.straight_weight)}"


def parse_indicator_name(name: str) -> ZSpec:
    """Parse "Z<seconds>-<degrees>-<weight>"; weight accepts exact rationals."""
    text = name.strip()
    if not text.upper().startswith("Z"):
        raise InvalidParameterError(f"indicator name must start with Z: {name!r}")
    parts = text[1:].split("-")
    if len(parts) != 3:
        raise InvalidParameterError(
            f"indicator name must look like Z5-15-1/3, got {name!r}"
        )
    try:
        dt = float(parts[0])
        deg = float(parts[1])
        w = Fraction(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameterError(f"bad indicator name {name!r}: {exc}") from exc
    return ZSpec(distraction_time=dt, angle=math.radians(deg), straight_weight=w)


_ANGLE_MATCH_TOL = 1e-9


def _check_events_match(events: Sequence[CrashEvent], spec: ZSpec) -> None:
    for ev in events:
        a = abs(ev.angle)
        if a > _ANGLE_EPS and abs(a - spec.angle) > _ANGLE_MATCH_TOL:
            raise InvalidParameterError(
                f"event angle {ev.angle} does not match indicator side angle "
                f"{spec.angle} (vehicle {ev.vehicle_id!r} at t0={ev.injection_time})"
            )
        if ev.elapsed > spec.distraction_time + 1e-9:
            raise InvalidParameterError(
                f"event elapsed {ev.elapsed} exceeds indicator distraction time "
                f"{spec.distraction_time}"
            )


def z_components(
    events: Sequence[CrashEvent], spec: ZSpec
) -> tuple[float, float, float]:
    """(front, left, right) energy sums in canonical event order."""
    _check_events_match(events, spec)
    front = left = right = 0.0
    for ev in events:
        cls = classify_angle(ev.angle)
        if cls == ANGLE_FRONT:
            front += ev.energy_total
        elif cls == ANGLE_LEFT:
            left += ev.energy_total
        else:
            right += ev.energy_total
    return front, left, right


def z_value(events: Sequence[CrashEvent], spec: ZSpec) -> float:
    """Weighted total crash energy in joules."""
    front, left, right = z_components(events, spec)
    w = float(spec.straight_weight)
    side = float(spec.side_weight)
    return w * front + side * left + side * right


def event_weight(event: CrashEvent, spec: ZSpec) -> float:
    cls = classify_angle(event.angle)
    return float(spec.straight_weight) if cls == ANGLE_FRONT else float(spec.side_weight)


@dataclass(frozen=True, slots=True)
class AngleStats:
    count: int
    energy_sum: float
    energy_mean: Optional[float]


@dataclass(frozen=True, slots=True)
class SummaryStats:
    """Aggregates over one event list; moments are None when undefined."""

    count: int
    energy_sum: float
    energy_mean: Optional[float]
    energy_variance: Optional[float]  # unbiased (n-1)
    energy_min: Optional[float]
    energy_max: Optional[float]
    elapsed_mean: Optional[float]
    per_angle: dict[str, AngleStats]


def aggregate_stats(events: Sequence[CrashEvent]) -> SummaryStats:
    """Counts, energy moments, mean time-to-crash and per-angle breakdown."""
    n = len(events)
    groups: dict[str, list[float]] = {ANGLE_FRONT: [], ANGLE_LEFT: [], ANGLE_RIGHT: []}
    energies = []
    elapsed = []
    for ev in events:
        energies.append(ev.energy_total)
        elapsed.append(ev.elapsed)
        groups[classify_angle(ev.angle)].append(ev.energy_total)
    per_angle = {}
    for key in (ANGLE_FRONT, ANGLE_LEFT, ANGLE_RIGHT):
        vals = groups[key]
        per_angle[key] = AngleStats(
            count=len(vals),
            energy_sum=math.fsum(vals),
            energy_mean=math.fsum(vals) / len(vals) if vals else None,
        )
    if n == 0:
        return SummaryStats(0, 0.0, None, None, None, None, None, per_angle)
    total = math.fsum(energies)
    mean = total / n
    variance = None
    if n > 1:
        variance = math.fsum((e - mean) ** 2 for e in energies) / (n - 1)
    return SummaryStats(
        count=n,
        energy_sum=total,
        energy_mean=mean,
        energy_variance=variance,
        energy_min=min(energies),
        energy_max=max(energies),
        elapsed_mean=math.fsum(elapsed) / n,
        per_angle=per_angle,
    )


@dataclass(frozen=True, slots=True)
class ThresholdStats:
    min_energy: float
    total: float
    mean: Optional[float]
    count: int


def threshold_view(events: Sequence[CrashEvent], e_min: float) -> ThresholdStats:
    """Total/mean/count over events with energy at or above e_min joules."""
    if e_min < 0:
        raise InvalidParameterError("energy threshold must be >= 0")
    kept = [ev.energy_total for ev in events if ev.energy_total >= e_min]
    total = math.fsum(kept)
    return ThresholdStats(
        min_energy=e_min,
        total=total,
        mean=total / len(kept) if kept else None,
        count=len(kept),
    )


@dataclass(frozen=True)
class DangerGrid:
    """Spatial accumulation of weighted crash energy at contact points."""

    origin: Vec2
    cell_size: float
    n_cols: int
    n_rows: int
    energy: np.ndarray  # [row, col], joules
    counts: np.ndarray  # [row, col], events
    overflow_energy: float
    overflow_count: int

    def total_energy(self) -> float:
        return float(self.energy.sum()) + self.overflow_energy


def danger_map(
    events: Sequence[CrashEvent],
    origin: Vec2,
    cell_size: float,
    extent: tuple[float, float],
    spec: ZSpec,
) -> DangerGrid:
    """Accumulate each event's weighted energy into the cell holding its
    contact point; events outside the extent land in an overflow bucket."""
    if cell_size <= 0:
        raise InvalidParameterError("cell_size must be > 0")
    width, height = extent
    if width <= 0 or height <= 0:
        raise InvalidParameterError(f"degenerate danger-map extent {extent}")
    n_cols = max(1, int(math.ceil(width / cell_size - 1e-12)))
    n_rows = max(1, int(math.ceil(height / cell_size - 1e-12)))
    energy = np.zeros((n_rows, n_cols), dtype=np.float64)
    counts = np.zeros((n_rows, n_cols), dtype=np.int64)
    overflow_energy = 0.0
    overflow_count = 0
    for ev in events:
        w = event_weight(ev, spec) * ev.energy_total
        col = math.floor((ev.contact_point[0] - origin[0]) / cell_size)
        row = math.floor((ev.contact_point[1] - origin[1]) / cell_size)
        if 0 <= col < n_cols and 0 <= row < n_rows:
            energy[row, col] += w
            counts[row, col] += 1
        else:
            overflow_energy += w
            overflow_count += 1
    return DangerGrid(
        origin=(float(origin[0]), float(origin[1])),
        cell_size=cell_size,
        n_cols=n_cols,
        n_rows=n_rows,
        energy=energy,
        counts=counts,
        overflow_energy=overflow_energy,
        overflow_count=overflow_count,
    )
