"""Evader-centered planar geometry.

Everything here is a pure function of its inputs: polar transforms around the
evader, interception (Apollonius) disks, occupied/coverage angles of a pursuer
ring, and the pursuer-count bound for guaranteed coverage. Angles are radians,
double precision, polar angles normalized to [0, 2*pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    DegeneratePositionError,
    InvalidSpeedRatioError,
    RingUndefinedError,
    VacuousConditionError,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Vec2:
    """Planar point/vector in world units."""

    x: float
    y: float

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __mul__(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y)

    def as_tuple(self) -> tuple:
        return (self.x, self.y)


@dataclass(frozen=True)
class PolarCoord:
    """Evader-centered polar coordinate: radius r >= 0, angle alpha in [0, 2*pi)."""

    r: float
    alpha: float

    def to_vec(self) -> Vec2:
        return Vec2(self.r * math.cos(self.alpha), self.r * math.sin(self.alpha))


@dataclass(frozen=True)
class MeetingLocus:
    """A candidate interception point on an Apollonius disk boundary."""

    point: Vec2


@dataclass(frozen=True)
class ApolloniusDisk:
    """Interception-point disk of one pursuer in the evader-centered frame.

    The boundary is the locus of points the pursuer (speed ratio lambda < 1)
    and the evader reach simultaneously when both run straight at max speed.
    ``occupied_angle`` is the angle the disk subtends at the origin.
    """

    center: Vec2
    radius: float
    occupied_angle: float

    def boundary_point(self, angle: float) -> MeetingLocus:
        """Point on the disk boundary at parameter ``angle`` (radians)."""
        return MeetingLocus(
            Vec2(
                self.center.x + self.radius * math.cos(angle),
                self.center.y + self.radius * math.sin(angle),
            )
        )


@dataclass(frozen=True)
class RingView:
    """Polar-sorted pursuer ring and its coverage summary.

    order:            pursuer ids sorted by ascending polar angle (ties by id)
    coverage:         signed gap between adjacent occupied sectors, one entry
                      per adjacent pair in ring order (last entry wraps around);
                      <= 0 means the sectors overlap, > 0 is an escapable gap
    group_occupied:   total angle of evader headings dominated by the team
    escapable_total:  2*pi minus group_occupied
    success_rate:     group_occupied / (2*pi)
    n_min:            minimum equal-sector pursuer count for full coverage,
                      evaluated at the uniform occupied angle the caller chose
    """

    order: tuple
    coverage: tuple
    group_occupied: float
    escapable_total: float
    success_rate: float
    n_min: float


def wrap_angle(angle: float) -> float:
    """Map an angle to [0, 2*pi)."""
    a = math.fmod(angle, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    # tiny negatives round up to exactly 2*pi; keep the half-open range
    if a == TWO_PI:
        a = 0.0
    return a


def to_local_polar(p_i: Vec2, p_e: Vec2) -> PolarCoord:
    """Polar coordinate of ``p_i`` in the frame centered at ``p_e``.

    Raises:
        DegeneratePositionError: if the points coincide (caller treats as capture).
    """
    dx = p_i.x - p_e.x
    dy = p_i.y - p_e.y
    r = math.sqrt(dx * dx + dy * dy)
    if r == 0.0:
        raise DegeneratePositionError("pursuer coincides with evader")
    a = math.atan2(dy, dx)
    if a < 0.0:
        a += TWO_PI
    if a == TWO_PI:  # tiny negative angles round up to the excluded endpoint
        a = 0.0
    return PolarCoord(r, a)


def occupied_angle(speed_ratio: float) -> float:
    """Angle of evader headings a single pursuer can intercept: 2*arcsin(ratio).

    Raises:
        InvalidSpeedRatioError: unless 0 < speed_ratio < 1.
    """
    if not 0.0 < speed_ratio < 1.0:
        raise InvalidSpeedRatioError(f"speed ratio must be in (0, 1), got {speed_ratio}")
    return 2.0 * math.asin(speed_ratio)


def apollonius_disk(p_local: Vec2, speed_ratio: float) -> ApolloniusDisk:
    """Interception disk for a pursuer at ``p_local`` in the evader frame.

    Center is p_local / (1 - ratio^2), radius |p_local| * ratio / (1 - ratio^2).

    Raises:
        InvalidSpeedRatioError: unless 0 < speed_ratio < 1.
        DegeneratePositionError: if p_local is the origin.
    """
    if not 0.0 < speed_ratio < 1.0:
        raise InvalidSpeedRatioError(f"speed ratio must be in (0, 1), got {speed_ratio}")
    dist = p_local.norm()
    if dist == 0.0:
        raise DegeneratePositionError("pursuer coincides with evader")
    scale = 1.0 / (1.0 - speed_ratio * speed_ratio)
    return ApolloniusDisk(
        center=Vec2(p_local.x * scale, p_local.y * scale),
        radius=dist * speed_ratio * scale,
        occupied_angle=occupied_angle(speed_ratio),
    )


def coverage_angles(alphas: Sequence[float], thetas: Sequence[float]) -> list:
    """Signed coverage gaps for pursuers already sorted by ascending angle.

    Entry j is the gap between sorted pursuers j and j+1; the last entry wraps
    from the last pursuer back to the first through 2*pi.
    """
    n = len(alphas)
    eps = []
    for j in range(n - 1):
        eps.append(alphas[j + 1] - alphas[j] - 0.5 * (thetas[j + 1] + thetas[j]))
    eps.append(TWO_PI + alphas[0] - alphas[n - 1] - 0.5 * (thetas[0] + thetas[n - 1]))
    return eps


def ring_view(
    polars: Sequence[PolarCoord],
    speed_ratios: Sequence[float],
    ids: Optional[Sequence[int]] = None,
    uniform_theta: Optional[float] = None,
) -> RingView:
    """Sort pursuers into a ring around the evader and summarize coverage.

    ``ids`` default to list indices; ties in polar angle break by ascending id.
    ``uniform_theta`` is the equal occupied angle used for the n_min report;
    when omitted, the smallest occupied angle present is used (conservative).

    group_occupied follows the adjacent-pair correction: only gaps between
    ring-adjacent sectors are subtracted. With strongly heterogeneous occupied
    angles a sector buried inside a non-adjacent overlap is not re-counted,
    so the value can undercount the true union of sectors (it never
    overcounts, and for a uniform speed ratio the two coincide).

    Raises:
        RingUndefinedError: fewer than two pursuers.
        DegeneratePositionError: any zero polar radius.
    """
    n = len(polars)
    if n < 2:
        raise RingUndefinedError("ring quantities need at least two pursuers")
    if len(speed_ratios) != n:
        raise ValueError("polars and speed_ratios must have equal length")
    if ids is None:
        ids = list(range(n))
    for p in polars:
        if p.r <= 0.0:
            raise DegeneratePositionError("zero polar radius in ring")

    thetas = [occupied_angle(lam) for lam in speed_ratios]
    order = sorted(range(n), key=lambda i: (polars[i].alpha, ids[i]))
    sorted_alphas = [polars[i].alpha for i in order]
    sorted_thetas = [thetas[i] for i in order]
    eps = coverage_angles(sorted_alphas, sorted_thetas)

    overlap_sum = 0.0
    group = sum(thetas)
    for e in eps:
        if e <= 0.0:
            overlap_sum += e
    group += overlap_sum

    if uniform_theta is None:
        uniform_theta = min(thetas)
    n_min = (TWO_PI - overlap_sum) / uniform_theta

    return RingView(
        order=tuple(ids[i] for i in order),
        coverage=tuple(eps),
        group_occupied=group,
        escapable_total=TWO_PI - group,
        success_rate=group / TWO_PI,
        n_min=n_min,
    )


def included_angle(a: PolarCoord, b: PolarCoord) -> float:
    """Unsigned angle in [0, pi] between two evader-centered position vectors.

    Computed by the law of cosines on the triangle (evader, a, b).

    Raises:
        DegeneratePositionError: either radius is zero.
    """
    if a.r <= 0.0 or b.r <= 0.0:
        raise DegeneratePositionError("zero polar radius")
    pa = a.to_vec()
    pb = b.to_vec()
    d = (pa - pb).norm()
    cos_phi = (a.r * a.r + b.r * b.r - d * d) / (2.0 * a.r * b.r)
    if cos_phi > 1.0:
        cos_phi = 1.0
    elif cos_phi < -1.0:
        cos_phi = -1.0
    return math.acos(cos_phi)


def required_pursuer_count(d_c: float, lambda_min: float, circumradius: float) -> int:
    """Smallest pursuer count n with n > pi / arcsin(d_c * lambda_min / circumradius).

    This is the count needed so a regular polygon of the given circumradius can
    keep every edge short enough to certify full coverage.

    Raises:
        VacuousConditionError: if d_c * lambda_min >= circumradius (any n >= 3 works).
    """
    if d_c <= 0.0 or not 0.0 < lambda_min < 1.0 or circumradius <= 0.0:
        raise ValueError("d_c and circumradius must be positive, lambda_min in (0, 1)")
    ratio = d_c * lambda_min / circumradius
    if ratio >= 1.0:
        raise VacuousConditionError(
            "capture reach covers the circumradius; any n >= 3 suffices"
        )
    bound = math.pi / math.asin(ratio)
    # Snap near-integer bounds before taking the strict successor, so float
    # noise cannot move an exact boundary across an integer.
    nearest = round(bound)
    if abs(bound - nearest) <= 1e-9 * max(1.0, abs(nearest)):
        bound = float(nearest)
    return math.floor(bound) + 1
