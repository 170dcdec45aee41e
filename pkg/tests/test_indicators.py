import math
from fractions import Fraction

import pytest

from crashsim.errors import InvalidParameterError
from crashsim.indicators import (
    ZSpec,
    aggregate_stats,
    danger_map,
    parse_indicator_name,
    threshold_view,
    z_value,
)
from crashsim.injection import CrashEvent, inject_all
from crashsim.model import InjectionParams
from crashsim.scenarios import tree_corridor, wall_corridor


def event(energy=1000.0, angle=0.0, point=(0.0, 0.0), elapsed=1.0, t0=0.0, vid="v"):
    return CrashEvent(
        injection_time=t0,
        vehicle_id=vid,
        angle=angle,
        angle_index=0,
        partner_kind="barrier",
        partner_id=0,
        contact_time=t0 + elapsed,
        elapsed=elapsed,
        contact_point=point,
        vehicle_velocity=(10.0, 0.0),
        partner_velocity=(0.0, 0.0),
        energy_total=energy,
        energy_1=energy,
        energy_2=0.0,
        delta_v12_mag=10.0,
    )


A15 = math.radians(15.0)
SPEC = ZSpec(distraction_time=5.0, angle=A15, straight_weight=Fraction(1, 3))


class TestIndicatorNames:
    def test_parse_fraction(self):
        spec = parse_indicator_name("Z5-15-1/3")
        assert spec.distraction_time == 5.0
        assert spec.angle == pytest.approx(A15)
        assert spec.straight_weight == Fraction(1, 3)

    def test_round_trip_fraction(self):
        assert parse_indicator_name("Z5-15-1/3").name == "Z5-15-1/3"

    def test_round_trip_decimal(self):
        assert parse_indicator_name("Z3-15-0.80").name == "Z3-15-0.80"
        spec = parse_indicator_name("Z3-15-0.80")
        assert spec.straight_weight == Fraction(4, 5)
        assert float(spec.side_weight) == pytest.approx(0.10)

    def test_bad_names_rejected(self):
        for bad in ("X5-15-1/3", "Z5-15", "Z5-15-2/0", "Zx-15-1/3"):
            with pytest.raises(InvalidParameterError):
                parse_indicator_name(bad)

    def test_weight_outside_unit_interval_rejected(self):
        with pytest.raises(InvalidParameterError):
            parse_indicator_name("Z5-15-3/2")


class TestZValue:
    def test_no_events(self):
        assert z_value([], SPEC) == 0.0

    def test_wall_corridor_z(self):
        events = inject_all(wall_corridor(), InjectionParams())
        z = z_value(events, SPEC)
        assert z == pytest.approx(1674682.45 / 3.0, abs=20.0)
        assert z == pytest.approx(558227.0, abs=20.0)

    def test_tree_corridor_z(self):
        events = inject_all(tree_corridor(), InjectionParams())
        assert z_value(events, SPEC) == pytest.approx(25000000.0 / 3.0, abs=100.0)

    def test_weighting_of_classes(self):
        events = [
            event(energy=300.0, angle=0.0),
            event(energy=600.0, angle=A15),
            event(energy=900.0, angle=-A15),
        ]
        spec = ZSpec(distraction_time=5.0, angle=A15, straight_weight=Fraction(4, 5))
        assert z_value(events, spec) == pytest.approx(0.8 * 300 + 0.1 * 600 + 0.1 * 900)

    def test_linearity(self):
        events = [event(energy=100.0, angle=a) for a in (0.0, A15, -A15)]
        doubled = [event(energy=200.0, angle=a) for a in (0.0, A15, -A15)]
        assert z_value(doubled, SPEC) == pytest.approx(2 * z_value(events, SPEC))

    def test_one_third_equals_third_of_total(self):
        events = [event(energy=e, angle=a) for e, a in ((10, 0.0), (20, A15), (30, -A15))]
        assert z_value(events, SPEC) == pytest.approx(60.0 / 3.0)

    def test_angle_mismatch_rejected(self):
        events = [event(angle=math.radians(20.0))]
        with pytest.raises(InvalidParameterError):
            z_value(events, SPEC)

    def test_elapsed_mismatch_rejected(self):
        events = [event(elapsed=7.0)]
        with pytest.raises(InvalidParameterError):
            z_value(events, SPEC)


class TestAggregateStats:
    def test_wall_corridor_stats(self):
        events = inject_all(wall_corridor(), InjectionParams())
        stats = aggregate_stats(events)
        assert stats.count == 80
        assert stats.energy_mean == pytest.approx(20933.0, abs=1.0)
        assert stats.energy_variance == pytest.approx(0.0, abs=1e-6)
        assert stats.per_angle["front"].count == 0
        assert stats.per_angle["left"].count == 40
        assert stats.per_angle["right"].count == 40
        assert 0.0 < stats.elapsed_mean <= 5.0

    def test_single_event(self):
        stats = aggregate_stats([event(energy=123.0)])
        assert stats.energy_min == stats.energy_max == stats.energy_mean == 123.0
        assert stats.energy_variance is None

    def test_empty(self):
        stats = aggregate_stats([])
        assert stats.count == 0
        assert stats.energy_sum == 0.0
        assert stats.energy_mean is None
        assert stats.elapsed_mean is None

    def test_mean_elapsed_head_on_pair(self):
        # two vehicles 100 m apart at 25 m/s each: first contact at 1.92 s
        # from the first injection, shrinking by 1 s of closing per step
        from crashsim.model import Scenario
        from conftest import uniform_trajectory

        a = uniform_trajectory("a", 0.0, 0.0, 25.0, 0.0, 0.0, 4.0)
        b = uniform_trajectory("b", 100.0, 0.0, 25.0, math.pi, 0.0, 4.0)
        sc = Scenario(trajectories=(a, b))
        events = inject_all(sc, InjectionParams(angles=(0.0,), weights=(1.0,)))
        by_t0 = {}
        for ev in events:
            by_t0.setdefault(ev.injection_time, []).append(ev.elapsed)
        for t0, elapsed_list in by_t0.items():
            # once the factual vehicles already overlap, contact lands on
            # the first sub-step
            expected = max((100.0 - 50.0 * t0 - 4.0) / 50.0, 0.05)
            for el in elapsed_list:
                assert el == pytest.approx(expected, abs=0.05 + 1e-9)
        stats = aggregate_stats(events)
        assert stats.elapsed_mean <= 5.0


class TestThresholdView:
    def test_zero_threshold_matches_totals(self):
        events = inject_all(wall_corridor(), InjectionParams())
        tv = threshold_view(events, 0.0)
        stats = aggregate_stats(events)
        assert tv.total == stats.energy_sum
        assert tv.count == stats.count

    def test_above_max(self):
        events = [event(energy=10.0), event(energy=20.0)]
        tv = threshold_view(events, 100.0)
        assert tv.count == 0
        assert tv.total == 0.0
        assert tv.mean is None

    def test_wall_events_filtered_at_21000(self):
        events = inject_all(wall_corridor(), InjectionParams())
        tv = threshold_view(events, 21000.0)
        assert tv.count == 0

    def test_negative_rejected(self):
        with pytest.raises(InvalidParameterError):
            threshold_view([], -1.0)


class TestDangerMap:
    def test_all_events_in_one_cell(self):
        events = [event(energy=900.0, angle=a, point=(5.0, 5.0)) for a in (0.0, A15, -A15)]
        grid = danger_map(events, (0.0, 0.0), 10.0, (10.0, 10.0), SPEC)
        assert grid.n_cols == grid.n_rows == 1
        assert grid.energy[0, 0] == pytest.approx(z_value(events, SPEC))
        assert grid.counts[0, 0] == 3
        assert grid.overflow_count == 0

    def test_empty_grid(self):
        grid = danger_map([], (0.0, 0.0), 5.0, (20.0, 10.0), SPEC)
        assert grid.energy.sum() == 0.0
        assert grid.counts.sum() == 0

    def test_wall_corridor_two_stripes(self):
        events = inject_all(wall_corridor(), InjectionParams())
        grid = danger_map(events, (-5.0, -5.0), 10.0, (1010.0, 10.0), SPEC)
        # one row of cells touches y=+3.5, none in between (row size 10 m)
        assert grid.n_rows == 1
        # contact points hug both walls; totals conserve the weighted sum
        total = grid.total_energy()
        assert total == pytest.approx(z_value(events, SPEC), rel=1e-6)

    def test_conservation_with_overflow(self):
        events = [
            event(energy=100.0, angle=0.0, point=(1.0, 1.0)),
            event(energy=200.0, angle=A15, point=(99.0, 1.0)),  # outside extent
        ]
        grid = danger_map(events, (0.0, 0.0), 5.0, (10.0, 10.0), SPEC)
        assert grid.overflow_count == 1
        assert grid.total_energy() == pytest.approx(z_value(events, SPEC), rel=1e-12)

    def test_degenerate_extent_rejected(self):
        with pytest.raises(InvalidParameterError):
            danger_map([], (0.0, 0.0), 5.0, (0.0, 10.0), SPEC)
        with pytest.raises(InvalidParameterError):
            danger_map([], (0.0, 0.0), -1.0, (10.0, 10.0), SPEC)
