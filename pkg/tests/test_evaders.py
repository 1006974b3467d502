"""Evader strategies: flee law, zero-order-hold external control, determinism."""

import math

import numpy as np
import pytest

from pursuitring.evaders import (
    EvaderSpec,
    ExternalStrategy,
    FleeStrategy,
    RandomHeadingStrategy,
    ScriptedStrategy,
    StaticStrategy,
    build_strategy,
    flee_velocity,
)


class TestFleeVelocity:
    def test_published_single_pursuer_case(self):
        # evader (2,0), pursuer (40,0), gain 140: argument x = 140*(-38)/38 + 2 = -138
        vx, vy = flee_velocity(2.0, 0.0, [40.0], [0.0], [38.0], 2.0, 140.0)
        assert vx == pytest.approx(-2.0)
        assert vy == pytest.approx(0.0, abs=1e-12)

    def test_origin_term_vanishes_at_origin(self):
        vx, vy = flee_velocity(0.0, 0.0, [10.0], [0.0], [10.0], 2.0, 140.0)
        assert (vx, vy) == pytest.approx((-2.0, 0.0))

    def test_symmetric_pursuers_cancel(self):
        # pursuers straight north and south of the evader at (1, 0): their
        # contributions cancel in y and the origin term drives +x motion
        vx, vy = flee_velocity(
            1.0, 0.0, [1.0, 1.0], [5.0, -5.0], [5.0, 5.0], 2.0, 140.0
        )
        assert vx == pytest.approx(2.0)
        assert vy == pytest.approx(0.0, abs=1e-12)

    def test_opt_out_of_origin_term(self):
        vx, vy = flee_velocity(
            1.0, 0.0, [1.0, 1.0], [5.0, -5.0], [5.0, 5.0], 2.0, 140.0,
            include_origin_term=False,
        )
        assert (vx, vy) == (0.0, 0.0)  # fallback: zero argument

    def test_distance_weighting_scale_covariance(self):
        # doubling all separations leaves the pursuer-sum term unchanged
        args1 = flee_velocity(0.0, 0.0, [3.0, -4.0], [4.0, 3.0], [5.0, 5.0], 1.0, 140.0)
        args2 = flee_velocity(0.0, 0.0, [6.0, -8.0], [8.0, 6.0], [10.0, 10.0], 1.0, 140.0)
        assert args1 == pytest.approx(args2)

    def test_speed_is_exactly_max(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(1, 8))
            px = rng.uniform(-50, 50, n)
            py = rng.uniform(-50, 50, n)
            ex, ey = rng.uniform(-10, 10, 2)
            radii = np.sqrt((px - ex) ** 2 + (py - ey) ** 2)
            if radii.min() < 1e-6:
                continue
            vx, vy = flee_velocity(ex, ey, px, py, radii, 2.0, 140.0)
            speed = math.hypot(vx, vy)
            assert speed == pytest.approx(2.0, abs=1e-12) or speed == 0.0


class TestFleeStrategy:
    def test_holds_previous_heading_on_zero_argument(self):
        s = FleeStrategy(max_speed=2.0, gain=1.0, include_origin_term=False)
        v1 = s.velocity(0, 0.0, 0.0, 0.0, [10.0], [0.0], [10.0])
        assert v1 == pytest.approx((-2.0, 0.0))
        # two symmetric pursuers now cancel: strategy keeps the held velocity
        v2 = s.velocity(
            1, 0.01, 0.0, 0.0, [10.0, -10.0], [0.0, 0.0], [10.0, 10.0]
        )
        assert v2 == v1

    def test_initial_zero_argument_stays_still(self):
        s = FleeStrategy(max_speed=2.0, gain=1.0, include_origin_term=False)
        v = s.velocity(0, 0.0, 0.0, 0.0, [10.0, -10.0], [0.0, 0.0], [10.0, 10.0])
        assert v == (0.0, 0.0)


class TestExternalStrategy:
    def test_initial_hold_is_zero(self):
        s = ExternalStrategy(max_speed=2.0)
        assert s.velocity(0, 0.0, 0, 0, [], [], []) == (0.0, 0.0)

    def test_steer_applies_at_next_tick_and_holds(self):
        s = ExternalStrategy(max_speed=2.0)
        s.submit({"op": "steer", "heading": math.pi})
        v = s.velocity(1, 0.01, 0, 0, [], [], [])
        assert v == pytest.approx((-2.0, 0.0), abs=1e-12)
        # zero-order hold without fresh commands
        assert s.velocity(2, 0.02, 0, 0, [], [], []) == v
        assert s.velocity(50, 0.5, 0, 0, [], [], []) == v

    def test_stop(self):
        s = ExternalStrategy(max_speed=2.0)
        s.submit({"op": "steer", "heading": 0.0})
        s.velocity(0, 0.0, 0, 0, [], [], [])
        s.submit({"op": "stop"})
        assert s.velocity(1, 0.01, 0, 0, [], [], []) == (0.0, 0.0)
        assert s.velocity(2, 0.02, 0, 0, [], [], []) == (0.0, 0.0)

    def test_latest_command_wins_within_a_tick(self):
        s = ExternalStrategy(max_speed=1.0)
        s.submit({"op": "steer", "heading": 0.0})
        s.submit({"op": "steer", "heading": math.pi / 2})
        vx, vy = s.velocity(0, 0.0, 0, 0, [], [], [])
        assert (vx, vy) == pytest.approx((0.0, 1.0), abs=1e-12)


class TestScriptedStrategy:
    def test_walks_waypoints_then_stops(self):
        s = ScriptedStrategy(max_speed=1.0, waypoints=[(1.0, 0.0), (1.0, 1.0)], dt=0.5)
        ex, ey = 0.0, 0.0
        for tick in range(40):
            vx, vy = s.velocity(tick, tick * 0.5, ex, ey, [], [], [])
            speed = math.hypot(vx, vy)
            assert speed == pytest.approx(1.0, abs=1e-12) or speed == 0.0
            ex += vx * 0.5
            ey += vy * 0.5
        assert (ex, ey) == pytest.approx((1.0, 1.0), abs=0.51)
        assert s.velocity(41, 20.5, ex, ey, [], [], []) == (0.0, 0.0)


class TestRandomHeadingStrategy:
    def test_deterministic_given_seed(self):
        a = RandomHeadingStrategy(max_speed=0.5, seed=7, hold_ticks=10)
        b = RandomHeadingStrategy(max_speed=0.5, seed=7, hold_ticks=10)
        seq_a = [a.velocity(t, 0.0, 0, 0, [], [], []) for t in range(50)]
        seq_b = [b.velocity(t, 0.0, 0, 0, [], [], []) for t in range(50)]
        assert seq_a == seq_b

    def test_heading_held_between_redraws(self):
        s = RandomHeadingStrategy(max_speed=0.5, seed=1, hold_ticks=10)
        seq = [s.velocity(t, 0.0, 0, 0, [], [], []) for t in range(20)]
        assert len(set(seq[:10])) == 1
        assert len(set(seq[10:20])) == 1
        assert seq[0] != seq[10]

    def test_speed(self):
        s = RandomHeadingStrategy(max_speed=0.5, seed=3, hold_ticks=5)
        for t in range(30):
            vx, vy = s.velocity(t, 0.0, 0, 0, [], [], [])
            assert math.hypot(vx, vy) == pytest.approx(0.5, abs=1e-12)


class TestBuildStrategy:
    def test_dispatch(self):
        assert isinstance(build_strategy(EvaderSpec(1.0, "static"), 0.01), StaticStrategy)
        assert isinstance(build_strategy(EvaderSpec(1.0, "flee"), 0.01), FleeStrategy)
        assert isinstance(build_strategy(EvaderSpec(1.0, "external"), 0.01), ExternalStrategy)
        assert isinstance(
            build_strategy(EvaderSpec(1.0, "scripted", waypoints=((1, 1),)), 0.01),
            ScriptedStrategy,
        )
        rnd = build_strategy(EvaderSpec(1.0, "random", heading_hold=0.5), 0.01)
        assert isinstance(rnd, RandomHeadingStrategy)
        assert rnd.hold_ticks == 50

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            EvaderSpec(max_speed=0.0)
        with pytest.raises(ValueError):
            EvaderSpec(max_speed=1.0, strategy="teleport")
        with pytest.raises(ValueError):
            EvaderSpec(max_speed=1.0, flee_gain=-1.0)
