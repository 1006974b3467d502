"""Evader-centered geometry: polar transforms, interception disks, ring coverage."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pursuitring.errors import (
    DegeneratePositionError,
    InvalidSpeedRatioError,
    RingUndefinedError,
    VacuousConditionError,
)
from pursuitring.geometry import (
    TWO_PI,
    PolarCoord,
    Vec2,
    apollonius_disk,
    included_angle,
    occupied_angle,
    required_pursuer_count,
    ring_view,
    to_local_polar,
)

TAU = TWO_PI


class TestToLocalPolar:
    def test_first_quadrant(self):
        p = to_local_polar(Vec2(3, 4), Vec2(0, 0))
        assert p.r == pytest.approx(5.0)
        assert p.alpha == pytest.approx(math.atan(4 / 3))

    def test_negative_x_axis(self):
        p = to_local_polar(Vec2(-1, 0), Vec2(0, 0))
        assert p.r == pytest.approx(1.0)
        assert p.alpha == pytest.approx(math.pi)

    def test_fourth_quadrant_branch(self):
        # branch x>0, y<0 maps to 2*pi + arctan(y/x)
        expected = TAU + math.atan(-2 / 2)
        p = to_local_polar(Vec2(2, -2), Vec2(0, 0))
        assert p.r == pytest.approx(2 * math.sqrt(2))
        assert p.alpha == pytest.approx(expected)
        assert p.alpha == pytest.approx(7 * math.pi / 4)

    def test_translation(self):
        p = to_local_polar(Vec2(5, 7), Vec2(2, 3))
        assert p.r == pytest.approx(5.0)

    def test_coincident_raises(self):
        with pytest.raises(DegeneratePositionError):
            to_local_polar(Vec2(1, 1), Vec2(1, 1))

    @given(
        st.floats(-100, 100), st.floats(-100, 100),
        st.floats(-100, 100), st.floats(-100, 100),
    )
    def test_range_and_radius(self, px, py, ex, ey):
        # separations whose square underflows count as coincident (capture)
        if (px - ex) ** 2 + (py - ey) ** 2 == 0.0:
            return
        p = to_local_polar(Vec2(px, py), Vec2(ex, ey))
        assert p.r > 0
        assert 0.0 <= p.alpha < TAU
        back = Vec2(ex, ey) + p.to_vec()
        assert back.x == pytest.approx(px, abs=1e-9)
        assert back.y == pytest.approx(py, abs=1e-9)


class TestApolloniusDisk:
    def test_center_and_radius(self):
        disk = apollonius_disk(Vec2(1, 0), 0.5)
        assert disk.center.x == pytest.approx(4 / 3)
        assert disk.center.y == pytest.approx(0.0)
        assert disk.radius == pytest.approx(2 / 3)

    def test_boundary_ratio_oracle(self):
        # oracle: every boundary point is reached simultaneously, so the
        # pursuer-to-point over evader-to-point distance ratio equals lambda
        disk = apollonius_disk(Vec2(1, 0), 0.5)
        p_local = Vec2(1, 0)
        for u in np.linspace(0, TAU, 100, endpoint=False):
            m = disk.boundary_point(u).point
            assert (m - p_local).norm() / m.norm() == pytest.approx(0.5, abs=1e-9)

    def test_occupied_angle_ratio_08(self):
        # published experiment value: 2*arcsin(0.8) ~= 0.59*pi
        disk = apollonius_disk(Vec2(3, -2), 0.8)
        assert disk.occupied_angle == pytest.approx(2 * math.asin(0.8))
        assert disk.occupied_angle / math.pi == pytest.approx(0.59, abs=0.005)

    def test_angle_approaches_pi(self):
        assert occupied_angle(1 - 1e-12) == pytest.approx(math.pi, abs=1e-5)

    def test_invalid_ratio(self):
        for lam in (0.0, 1.0, 1.5, -0.2):
            with pytest.raises(InvalidSpeedRatioError):
                apollonius_disk(Vec2(1, 0), lam)

    def test_origin_raises(self):
        with pytest.raises(DegeneratePositionError):
            apollonius_disk(Vec2(0, 0), 0.5)

    def test_subtended_angle_identity(self):
        # occupied angle equals the angle subtended by the disk from the origin
        rng = np.random.default_rng(7)
        for _ in range(1000):
            p = Vec2(rng.uniform(-50, 50), rng.uniform(-50, 50))
            if p.norm() < 1e-6:
                continue
            lam = rng.uniform(0.05, 0.995)
            disk = apollonius_disk(p, lam)
            subtended = 2 * math.asin(disk.radius / disk.center.norm())
            assert abs(disk.occupied_angle - subtended) < 1e-12


class TestOccupiedAngle:
    def test_half(self):
        assert occupied_angle(0.5) == pytest.approx(math.pi / 3)

    def test_bisection_oracle_09(self):
        # independent oracle: solve sin(theta/2) = 0.9 by bisection
        lo, hi = 0.0, math.pi
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if math.sin(mid / 2) < 0.9:
                lo = mid
            else:
                hi = mid
        assert occupied_angle(0.9) == pytest.approx(0.5 * (lo + hi), abs=1e-12)
        assert occupied_angle(0.9) == pytest.approx(2.2395, abs=1e-4)

    def test_inverse_identity_experiment_ratio(self):
        # the hardware experiment used lambda = sin(3*pi/8)
        assert occupied_angle(math.sin(3 * math.pi / 8)) == pytest.approx(3 * math.pi / 4)

    def test_out_of_range(self):
        with pytest.raises(InvalidSpeedRatioError):
            occupied_angle(1.0)


class TestRingView:
    def test_two_pursuers_hand_evaluation(self):
        # alpha 0 and pi, both lambda=0.5 (theta=pi/3): both gaps 2*pi/3
        rv = ring_view([PolarCoord(1, 0.0), PolarCoord(1, math.pi)], [0.5, 0.5])
        assert rv.coverage == pytest.approx((2 * math.pi / 3, 2 * math.pi / 3))
        assert rv.group_occupied == pytest.approx(2 * math.pi / 3)
        assert rv.success_rate == pytest.approx(1 / 3)
        # identity: gap sum = 2*pi - theta sum
        assert sum(rv.coverage) == pytest.approx(TAU - 2 * (math.pi / 3), abs=1e-12)

    def test_three_even_high_ratio_full_coverage(self):
        # theta(0.9) ~ 0.713*pi > 2*pi/3, so an even spread overlaps everywhere
        polars = [PolarCoord(5, a) for a in (0.0, TAU / 3, 2 * TAU / 3)]
        rv = ring_view(polars, [0.9, 0.9, 0.9])
        assert all(e < 0 for e in rv.coverage)
        assert rv.group_occupied == pytest.approx(TAU, abs=1e-12)
        assert rv.success_rate == pytest.approx(1.0, abs=1e-12)

    def test_n_min_boundary(self):
        # uniform theta = 2*pi/3 with no overlaps: exactly three pursuers needed,
        # which demands lambda >= sin(pi/3) ~ 0.86
        lam = math.sin(math.pi / 3)
        assert lam == pytest.approx(0.866, abs=0.007)
        rv = ring_view(
            [PolarCoord(1, 0.0), PolarCoord(1, math.pi)],
            [lam, lam],
            uniform_theta=2 * math.pi / 3,
        )
        assert rv.n_min == pytest.approx(3.0, abs=1e-12)

    def test_sort_and_tiebreak(self):
        polars = [PolarCoord(1, 1.0), PolarCoord(1, 0.5), PolarCoord(2, 0.5)]
        rv = ring_view(polars, [0.5, 0.5, 0.5])
        assert rv.order == (1, 2, 0)  # equal angles break by id

    def test_ring_undefined(self):
        with pytest.raises(RingUndefinedError):
            ring_view([PolarCoord(1, 0.0)], [0.5])

    def test_coverage_identity_random(self):
        # gap sum telescopes to 2*pi - theta sum for any configuration
        rng = np.random.default_rng(3)
        for _ in range(200):
            n = rng.integers(2, 21)
            polars = [
                PolarCoord(rng.uniform(0.1, 50), rng.uniform(0, TAU)) for _ in range(n)
            ]
            lams = rng.uniform(0.05, 0.99, n).tolist()
            rv = ring_view(polars, lams)
            theta_sum = sum(occupied_angle(l) for l in lams)
            assert sum(rv.coverage) == pytest.approx(TAU - theta_sum, abs=1e-12)
            assert 0.0 <= rv.success_rate <= 1.0 + 1e-15
            full = all(e <= 0 for e in rv.coverage)
            assert (rv.group_occupied >= TAU - 1e-9) == full

    def test_group_angle_monotone_in_team_size_uniform_ratio(self):
        # The adjacent-pair coverage formula only corrects neighboring
        # overlaps, so with strongly heterogeneous occupied angles a newcomer
        # can break an adjacency and lower the reported group angle (a small
        # sector dropped inside a deep two-sector overlap does it). With a
        # uniform ratio no sector can hide inside a neighbor's and adding a
        # pursuer never decreases the group angle.
        rng = np.random.default_rng(11)
        for _ in range(200):
            n = int(rng.integers(2, 10))
            lam = float(rng.uniform(0.2, 0.95))
            polars = [
                PolarCoord(rng.uniform(0.5, 20), rng.uniform(0, TAU)) for _ in range(n)
            ]
            base = ring_view(polars, [lam] * n).group_occupied
            extra = polars + [PolarCoord(rng.uniform(0.5, 20), rng.uniform(0, TAU))]
            grown = ring_view(extra, [lam] * (n + 1)).group_occupied
            assert grown >= base - 1e-9


class TestIncludedAngle:
    def test_orthogonal(self):
        phi = included_angle(PolarCoord(2, 0.0), PolarCoord(2, math.pi / 2))
        assert phi == pytest.approx(math.pi / 2)

    def test_law_of_cosines_case(self):
        # b at Cartesian (2, 0.5): cos(phi) = 4/sqrt(17) by the law of cosines
        b = to_local_polar(Vec2(2, 0.5), Vec2(0, 0))
        phi = included_angle(PolarCoord(2, 0.0), b)
        assert phi == pytest.approx(math.acos(4 / math.sqrt(17)))
        assert phi == pytest.approx(0.2450, abs=1e-4)

    def test_identical_direction(self):
        assert included_angle(PolarCoord(1, 1.3), PolarCoord(5, 1.3)) == pytest.approx(0.0)

    def test_zero_radius(self):
        with pytest.raises(DegeneratePositionError):
            included_angle(PolarCoord(0, 0.0), PolarCoord(1, 0.0))

    @settings(max_examples=200)
    @given(
        st.floats(0.01, 100), st.floats(0, TAU - 1e-9),
        st.floats(0.01, 100), st.floats(0, TAU - 1e-9),
    )
    def test_matches_wrapped_angle_difference(self, r1, a1, r2, a2):
        phi = included_angle(PolarCoord(r1, a1), PolarCoord(r2, a2))
        diff = abs(a1 - a2)
        expected = min(diff, TAU - diff)
        # the law-of-cosines form loses ~sqrt(eps * rmax/rmin) near phi = 0
        assert phi == pytest.approx(expected, abs=1e-5)
        assert 0.0 <= phi <= math.pi


class TestRequiredPursuerCount:
    def test_published_polygon_parameters(self):
        # d_c=3.1, lambda=0.95, circumradius 10: bound ~10.51 so n = 11
        bound = math.pi / math.asin(3.1 * 0.95 / 10.0)
        assert bound == pytest.approx(10.51, abs=0.01)
        assert required_pursuer_count(3.1, 0.95, 10.0) == 11

    def test_exact_integer_boundary(self):
        # d_c * lambda_min = R_p * sin(pi/4) makes the bound exactly 4 -> n = 5
        assert required_pursuer_count(2 * math.sin(math.pi / 4), 0.5, 1.0) == 5

    def test_small_ratio_grows(self):
        assert required_pursuer_count(1.0, 0.01, 10.0) > 3000

    def test_vacuous(self):
        with pytest.raises(VacuousConditionError):
            required_pursuer_count(3.0, 0.5, 1.0)
