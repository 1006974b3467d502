"""Capture predicates and sufficient-condition certificates.

Short pursuer-pair distances force overlapping interception sectors; a polygon
of short enough edges around the evader therefore certifies full coverage. The
certificate bundles the four initial-distribution conditions under which the
constrained pursuit law guarantees capture regardless of evader strategy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import AlreadyCapturedError, NotApplicableError
from .fields import FieldParams, NeighborSets
from .geometry import PolarCoord, Vec2, occupied_angle, to_local_polar


@dataclass(frozen=True)
class CaptureParams:
    """Capture radius and the weakest speed ratio in the team."""

    d_c: float
    lambda_min: float

    def __post_init__(self):
        if self.d_c <= 0.0:
            raise ValueError(f"capture radius must be positive, got {self.d_c}")
        if not 0.0 < self.lambda_min < 1.0:
            raise ValueError(f"lambda_min must be in (0, 1), got {self.lambda_min}")


@dataclass(frozen=True)
class CaptureCertificate:
    """Outcome of the guaranteed-capture precondition check at game start.

    guaranteed is the conjunction of the five condition fields.
    """

    cond_edges_ok: bool
    cond_separation_ok: bool
    cond_radii_ok: bool
    cond_topology_ok: bool
    evader_inside: bool

    @property
    def guaranteed(self) -> bool:
        return (
            self.cond_edges_ok
            and self.cond_separation_ok
            and self.cond_radii_ok
            and self.cond_topology_ok
            and self.evader_inside
        )

    def to_dict(self) -> dict:
        return {
            "cond_edges_ok": self.cond_edges_ok,
            "cond_separation_ok": self.cond_separation_ok,
            "cond_radii_ok": self.cond_radii_ok,
            "cond_topology_ok": self.cond_topology_ok,
            "evader_inside": self.evader_inside,
            "guaranteed": self.guaranteed,
        }


def point_in_polygon(point: Vec2, vertices: Sequence[Vec2]) -> bool:
    """Strict interiority test by winding number; boundary counts as outside."""
    n = len(vertices)
    if n < 3:
        return False
    winding = 0
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        cross = (b.x - a.x) * (point.y - a.y) - (point.x - a.x) * (b.y - a.y)
        # on-edge points are not interior
        if cross == 0.0:
            if (
                min(a.x, b.x) <= point.x <= max(a.x, b.x)
                and min(a.y, b.y) <= point.y <= max(a.y, b.y)
            ):
                return False
        if a.y <= point.y:
            if b.y > point.y and cross > 0.0:
                winding += 1
        elif b.y <= point.y and cross < 0.0:
            winding -= 1
    return winding != 0


def lemma1_holds(
    a: PolarCoord,
    b: PolarCoord,
    lambda_a: float,
    lambda_b: float,
    d_c: float,
) -> bool:
    """True when the pair distance is at most 2 * d_c * min(lambda_a, lambda_b).

    Whenever true (and both radii exceed d_c), the pair's interception sectors
    overlap: their coverage gap phi - (theta_a + theta_b) / 2 is <= 0.

    Raises:
        AlreadyCapturedError: either radius is at or below the capture radius.
    """
    if a.r <= d_c or b.r <= d_c:
        raise AlreadyCapturedError("a pursuer is already within the capture radius")
    d = (a.to_vec() - b.to_vec()).norm()
    return d <= 2.0 * d_c * min(lambda_a, lambda_b)


def lemma2_holds(
    polygon: Sequence[Vec2], evader: Vec2, params: CaptureParams
) -> bool:
    """True when every polygon edge is short enough to certify full coverage.

    The polygon vertices must be given in boundary order with the evader
    strictly inside; edges no longer than 2 * d_c * lambda_min force every
    adjacent coverage gap nonpositive, hence a group occupied angle of 2*pi.

    Raises:
        NotApplicableError: fewer than three vertices or evader not strictly inside.
        AlreadyCapturedError: a vertex is already within the capture radius.
    """
    if len(polygon) < 3:
        raise NotApplicableError("a polygon needs at least three vertices")
    if not point_in_polygon(evader, polygon):
        raise NotApplicableError("evader is not strictly inside the polygon")
    for v in polygon:
        if (v - evader).norm() <= params.d_c:
            raise AlreadyCapturedError("a vertex is already within the capture radius")
    limit = 2.0 * params.d_c * params.lambda_min
    n = len(polygon)
    return all(
        (polygon[i] - polygon[(i + 1) % n]).norm() <= limit for i in range(n)
    )


def theorem2_certificate(
    positions: Mapping[int, Vec2],
    evader: Vec2,
    field_params: FieldParams,
    capture_params: CaptureParams,
    neighbor_sets: Mapping[int, NeighborSets],
) -> CaptureCertificate:
    """Evaluate the guaranteed-capture preconditions on an initial distribution.

    Conditions: every maintained edge starts below R_f; every visible pair
    starts above R_o; the radii are ordered with R_f <= 2 * d_c * lambda_min;
    each pursuer's ring neighbors are in its polygon set, which is in its
    omega set; and the evader starts strictly inside the pursuer polygon.
    Malformed neighbor sets surface as cond_topology_ok=False, not an error.
    """
    ids = sorted(positions)
    if len(ids) < 3:
        raise NotApplicableError("certificate needs at least three pursuers")

    edges_ok = True
    for i in ids:
        for j in neighbor_sets[i].polygon:
            if (positions[i] - positions[j]).norm() >= field_params.R_f:
                edges_ok = False

    separation_ok = True
    for i in ids:
        for j in neighbor_sets[i].omega:
            if (positions[i] - positions[j]).norm() <= field_params.R_o:
                separation_ok = False

    radii_ok = field_params.R_f <= 2.0 * capture_params.d_c * capture_params.lambda_min

    # ring adjacency around the evader at game start
    ring = sorted(ids, key=lambda i: (to_local_polar(positions[i], evader).alpha, i))
    n = len(ring)
    topology_ok = True
    for idx, i in enumerate(ring):
        expected = {ring[(idx - 1) % n], ring[(idx + 1) % n]}
        sets = neighbor_sets.get(i)
        if sets is None:
            topology_ok = False
            continue
        poly = set(sets.polygon)
        if not expected <= poly or not poly <= set(sets.omega):
            topology_ok = False

    inside = point_in_polygon(evader, [positions[i] for i in ring])

    return CaptureCertificate(
        cond_edges_ok=edges_ok,
        cond_separation_ok=separation_ok,
        cond_radii_ok=radii_ok,
        cond_topology_ok=topology_ok,
        evader_inside=inside,
    )


def capture_check(
    positions: Mapping[int, Vec2], evader: Vec2, d_c: float
) -> Optional[int]:
    """Id of the capturing pursuer (distance <= d_c), or None.

    The smallest distance wins; exact ties break by ascending id.
    """
    best_id = None
    best_d = math.inf
    for i in sorted(positions):
        d = (positions[i] - evader).norm()
        if d <= d_c and d < best_d:
            best_id = i
            best_d = d
    return best_id


def coverage_gap(a: PolarCoord, b: PolarCoord, lambda_a: float, lambda_b: float) -> float:
    """Signed pairwise coverage gap phi - (theta_a + theta_b) / 2."""
    from .geometry import included_angle

    phi = included_angle(a, b)
    return phi - 0.5 * (occupied_angle(lambda_a) + occupied_angle(lambda_b))
