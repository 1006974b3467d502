"""Potential-field distance maintenance and inter-collision avoidance.

Two disjoint rational-square potentials act on pursuer pair distances: a
maintenance well that blows up as a polygon edge stretches toward the outer
radius R_f, and a collision barrier that blows up as any pair closes toward
the inner radius R_o. Their negative gradients are combined through a
componentwise signum into a bounded correction velocity. The raw signum law is
implemented as written; the fixed integration step bounds chatter frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Tuple

from .errors import PotentialOverflowError
from .geometry import Vec2


@dataclass(frozen=True)
class FieldParams:
    """Radii and speed margin for the two potentials.

    Ordering 0 < R_o < R_b < R_c < R_f is required so the collision band
    (R_o, R_b] and the maintenance band [R_c, R_f) never overlap.
    """

    R_c: float
    R_f: float
    R_o: float
    R_b: float
    b: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.R_o < self.R_b < self.R_c < self.R_f:
            raise ValueError(
                "field radii must satisfy 0 < R_o < R_b < R_c < R_f, got "
                f"R_o={self.R_o}, R_b={self.R_b}, R_c={self.R_c}, R_f={self.R_f}"
            )
        if self.b <= 0.0:
            raise ValueError(f"speed margin b must be positive, got {self.b}")


@dataclass(frozen=True)
class NeighborSets:
    """Who one pursuer can see and which edges it maintains.

    omega:   ids whose positions this pursuer can read
    polygon: the two polygon-adjacent ids whose edge lengths it maintains
    d_m/d_o: ids currently inside the maintenance / collision band (derived
             from positions; empty until classified)
    """

    omega: frozenset
    polygon: tuple
    d_m: frozenset = field(default_factory=frozenset)
    d_o: frozenset = field(default_factory=frozenset)

    def classify_bands(
        self, p_i: Vec2, positions: Mapping[int, Vec2], params: FieldParams
    ) -> "NeighborSets":
        """Return a copy with d_m/d_o filled in for the given positions."""
        d_m = []
        for j in self.polygon:
            d = (p_i - positions[j]).norm()
            if params.R_c <= d < params.R_f:
                d_m.append(j)
        d_o = []
        for j in self.omega:
            d = (p_i - positions[j]).norm()
            if params.R_o < d <= params.R_b:
                d_o.append(j)
        return NeighborSets(
            omega=self.omega,
            polygon=self.polygon,
            d_m=frozenset(d_m),
            d_o=frozenset(d_o),
        )


def _rational_square_gradient(d: float, zero_sq: float, pole_sq: float) -> Tuple[float, float]:
    """Value and d/dd of ((d^2 - (2*zero_sq - pole_sq)) / (d^2 - pole_sq))^2 - 1.

    Centered on u = d^2 - zero_sq so the value is exactly 0.0 at the boundary
    d^2 == zero_sq (where the inner fraction is exactly -1), and the pole sits
    at d^2 == pole_sq.
    """
    u = d * d - zero_sq
    w = pole_sq - zero_sq
    den = u - w
    g = (u + w) / den
    value = g * g - 1.0
    grad = 4.0 * d * g * (-2.0 * w) / (den * den)
    return value, grad


def maintenance_potential(d: float, params: FieldParams) -> Tuple[float, float]:
    """Edge-stretch potential and its derivative with respect to distance.

    Zero (with zero gradient) outside the band [R_c, R_f); inside, the value
    rises from exactly 0 at R_c and grows without bound toward R_f.

    Raises:
        PotentialOverflowError: evaluation overflowed (distance at the blow-up radius).
    """
    if d <= 0.0:
        raise ValueError("distance must be positive")
    if not params.R_c <= d < params.R_f:
        return 0.0, 0.0
    value, grad = _rational_square_gradient(d, params.R_c * params.R_c, params.R_f * params.R_f)
    if not (math.isfinite(value) and math.isfinite(grad)):
        raise PotentialOverflowError(f"maintenance potential overflow at d={d}")
    return value, grad


def collision_potential(d: float, params: FieldParams) -> Tuple[float, float]:
    """Closing-distance potential and its derivative with respect to distance.

    Zero outside the band (R_o, R_b]; inside, the value falls to exactly 0 at
    R_b and grows without bound toward R_o.

    Raises:
        PotentialOverflowError: evaluation overflowed (distance at the blow-up radius).
    """
    if d <= 0.0:
        raise ValueError("distance must be positive")
    if not params.R_o < d <= params.R_b:
        return 0.0, 0.0
    value, grad = _rational_square_gradient(d, params.R_b * params.R_b, params.R_o * params.R_o)
    if not (math.isfinite(value) and math.isfinite(grad)):
        raise PotentialOverflowError(f"collision potential overflow at d={d}")
    return value, grad


def _sign(x: float) -> float:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


def correction_velocity(
    p_i: Vec2,
    positions: Mapping[int, Vec2],
    sets: NeighborSets,
    params: FieldParams,
    v_sh: Vec2,
) -> Vec2:
    """Distance-maintenance plus collision-avoidance velocity for one pursuer.

    Sums the negative potential gradients over the polygon set (maintenance)
    and the omega set (collision), then applies (|v_sh| + b) * sgn(..)
    componentwise, with sgn(0) = 0. Returns the zero vector when no neighbor
    is inside either band.

    Raises:
        PotentialOverflowError: a pair distance sits on a blow-up radius.
    """
    gx = 0.0
    gy = 0.0
    for j in sets.polygon:
        q = positions[j]
        dx = p_i.x - q.x
        dy = p_i.y - q.y
        d = math.sqrt(dx * dx + dy * dy)
        _, grad = maintenance_potential(d, params)
        if grad != 0.0:
            gx -= grad * dx / d
            gy -= grad * dy / d
    for j in sets.omega:
        q = positions[j]
        dx = p_i.x - q.x
        dy = p_i.y - q.y
        d = math.sqrt(dx * dx + dy * dy)
        if d == params.R_o:
            raise PotentialOverflowError(f"contact with collision blow-up radius at id {j}")
        _, grad = collision_potential(d, params)
        if grad != 0.0:
            gx -= grad * dx / d
            gy -= grad * dy / d
    if not (math.isfinite(gx) and math.isfinite(gy)):
        raise PotentialOverflowError("correction gradient overflow")
    scale = v_sh.norm() + params.b
    return Vec2(scale * _sign(gx), scale * _sign(gy))


def combined_velocity(v_s: Vec2, v_h: Vec2, v_m: Vec2, max_speed: float) -> Vec2:
    """Sum the three components and rescale to the pursuer's max speed.

    A zero sum returns the zero vector (the pursuer holds position that tick);
    any other sum comes back with magnitude exactly max_speed.
    """
    if max_speed <= 0.0:
        raise ValueError("max_speed must be positive")
    sx = v_s.x + v_h.x + v_m.x
    sy = v_s.y + v_h.y + v_m.y
    norm = math.sqrt(sx * sx + sy * sy)
    if norm == 0.0:
        return Vec2(0.0, 0.0)
    scale = max_speed / norm
    return Vec2(sx * scale, sy * scale)
