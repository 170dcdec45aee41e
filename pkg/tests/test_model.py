import math

import pytest

from crashsim.errors import InvalidParameterError
from crashsim.model import (
    Bounds,
    InjectionParams,
    KinematicState,
    Scenario,
    StaticGeometry,
    Trajectory,
    VehicleAttributes,
    id_sort_key,
    state_at,
    validate_scenario,
    velocity_vector,
    wrap_angle,
)

from conftest import make_state, make_vehicle, uniform_trajectory


class TestVelocityVector:
    def test_zero_speed(self):
        assert velocity_vector(make_state(speed=0.0, heading=1.2)) == (0.0, 0.0)

    def test_axis_aligned(self):
        assert velocity_vector(make_state(speed=25.0, heading=0.0)) == (25.0, 0.0)

    def test_quarter_turn(self):
        vx, vy = velocity_vector(make_state(speed=25.0, heading=math.pi / 2))
        assert abs(vx) < 1e-12
        assert vy == pytest.approx(25.0, abs=1e-12)

    def test_magnitude_matches_speed(self):
        import random

        rng = random.Random(7)
        for _ in range(500):
            speed = rng.uniform(0.0, 60.0)
            st = make_state(speed=speed, heading=rng.uniform(-10, 10))
            vx, vy = velocity_vector(st)
            assert math.hypot(vx, vy) == pytest.approx(speed, rel=1e-12, abs=1e-12)


class TestStateAt:
    def _traj(self):
        return uniform_trajectory("v", 0.0, 0.0, 10.0, 0.0, t0=0.0, t1=10.0)

    def test_exact_at_sample(self):
        tr = self._traj()
        st = state_at(tr, 3.0)
        assert st == tr.states[3]

    def test_linear_midpoint(self):
        a = make_state(t=0.0, x=0.0, y=0.0, speed=10.0)
        b = make_state(t=1.0, x=10.0, y=0.0, speed=10.0)
        tr = Trajectory(vehicle=make_vehicle(), states=(a, b))
        st = state_at(tr, 0.5)
        assert st.position == (5.0, 0.0)
        assert st.speed == 10.0

    def test_outside_span_absent(self):
        tr = self._traj()
        assert state_at(tr, -0.1) is None
        assert state_at(tr, 10.1) is None

    def test_heading_shortest_arc_across_pi(self):
        a = KinematicState(time=0.0, position=(0, 0), speed=1.0, heading=math.pi - 0.1)
        b = KinematicState(time=1.0, position=(1, 0), speed=1.0, heading=-math.pi + 0.1)
        tr = Trajectory(vehicle=make_vehicle(), states=(a, b))
        st = state_at(tr, 0.5)
        # halfway along the short arc through pi, not through zero
        assert abs(abs(st.heading) - math.pi) < 1e-9

    def test_interpolated_invariants(self):
        import random

        rng = random.Random(3)
        states = []
        t = 0.0
        for _ in range(20):
            states.append(
                KinematicState(
                    time=t,
                    position=(rng.uniform(-100, 100), rng.uniform(-100, 100)),
                    speed=rng.uniform(0, 40),
                    heading=rng.uniform(-math.pi, math.pi - 1e-9),
                )
            )
            t += rng.uniform(0.2, 2.0)
        tr = Trajectory(vehicle=make_vehicle(), states=tuple(states))
        for _ in range(2000):
            q = rng.uniform(states[0].time, states[-1].time)
            st = state_at(tr, q)
            assert st is not None
            assert st.speed >= 0.0
            assert -math.pi <= st.heading < math.pi

    def test_continuity_near_sample(self):
        tr = self._traj()
        eps = 1e-9
        before = state_at(tr, 4.0 - eps)
        at = state_at(tr, 4.0)
        after = state_at(tr, 4.0 + eps)
        for a, b in ((before, at), (at, after)):
            assert abs(a.position[0] - b.position[0]) < 1e-6
            assert abs(a.speed - b.speed) < 1e-6


class TestWrapAngle:
    def test_range(self):
        import random

        rng = random.Random(11)
        for _ in range(5000):
            w = wrap_angle(rng.uniform(-1000, 1000))
            assert -math.pi <= w < math.pi

    def test_pi_maps_to_minus_pi(self):
        assert wrap_angle(math.pi) == -math.pi
        assert wrap_angle(-math.pi) == -math.pi


class TestValidation:
    def test_well_formed_scenario_is_clean(self):
        sc = Scenario(trajectories=(uniform_trajectory("v", 0, 0, 10, 0, 0, 10),))
        assert validate_scenario(sc) == []

    def test_duplicate_timestamp_flagged(self):
        states = (
            make_state(t=0.0, x=0.0, speed=1.0),
            make_state(t=1.0, x=1.0, speed=1.0),
            make_state(t=1.0, x=1.5, speed=1.0),
        )
        sc = Scenario(trajectories=(Trajectory(vehicle=make_vehicle("dup"), states=states),))
        diags = [d for d in validate_scenario(sc) if d.kind == "non-monotone-time"]
        assert len(diags) == 1
        assert diags[0].vehicle_id == "dup"

    def test_kinematic_jump_flagged(self):
        # 100 m in 1 s while reporting 10 m/s: implied speed 100 > 2 * 10
        states = (
            make_state(t=0.0, x=0.0, speed=10.0),
            make_state(t=1.0, x=100.0, speed=10.0),
        )
        sc = Scenario(trajectories=(Trajectory(vehicle=make_vehicle(), states=states),))
        kinds = [d.kind for d in validate_scenario(sc)]
        assert "kinematic-inconsistency" in kinds

    def test_out_of_bounds_warns_not_rejects(self):
        tr = uniform_trajectory("v", 0, 0, 10, 0, 0, 10)
        sc = Scenario(
            trajectories=(tr,),
            bounds=Bounds(0.0, -1.0, 5.0, 1.0),
        )
        diags = validate_scenario(sc)
        assert any(d.kind == "out-of-bounds" for d in diags)


class TestTypes:
    def test_negative_speed_rejected(self):
        with pytest.raises(InvalidParameterError):
            KinematicState(time=0.0, position=(0, 0), speed=-1.0, heading=0.0)

    def test_heading_normalized_on_construction(self):
        st = KinematicState(time=0.0, position=(0, 0), speed=1.0, heading=3 * math.pi)
        assert -math.pi <= st.heading < math.pi

    def test_vehicle_attribute_invariants(self):
        for bad in (dict(length=0), dict(width=-1), dict(mass=0)):
            kwargs = dict(id="x", length=4.0, width=2.0, mass=1000.0)
            kwargs.update(bad)
            with pytest.raises(InvalidParameterError):
                VehicleAttributes(**kwargs)

    def test_duplicate_ids_rejected(self):
        tr1 = uniform_trajectory("a", 0, 0, 10, 0, 0, 5)
        tr2 = uniform_trajectory("a", 0, 10, 10, 0, 0, 5)
        with pytest.raises(InvalidParameterError):
            Scenario(trajectories=(tr1, tr2))

    def test_barrier_needs_two_points(self):
        with pytest.raises(InvalidParameterError):
            StaticGeometry(barriers=(((0.0, 0.0),),))

    def test_id_sort_key_is_numeric_aware(self):
        ids = ["10", "2", "W001", "E002", "1"]
        assert sorted(ids, key=id_sort_key) == ["1", "2", "10", "E002", "W001"]


class TestInjectionParams:
    def test_defaults_valid(self):
        p = InjectionParams()
        assert p.distraction_time == 5.0
        assert len(p.angles) == 3

    def test_weights_must_sum_to_one(self):
        with pytest.raises(InvalidParameterError):
            InjectionParams(weights=(0.5, 0.2, 0.2))

    def test_sub_step_bounded_by_time_step(self):
        with pytest.raises(InvalidParameterError):
            InjectionParams(sub_step=2.0, time_step=1.0)

    def test_nonzero_restitution_rejected(self):
        with pytest.raises(InvalidParameterError):
            InjectionParams(epsilon=0.3)
