"""Distributed pursuit law for one pursuer ring.

Each pursuer splits its velocity between a surrounding component (tangential,
driven by the imbalance of its two coverage gaps) and a hunting component
(radial, straight at the evader). The trade-off angle beta allocates speed
between them and stays strictly below pi/2, so the hunting component never
vanishes. Also provides the ring consensus matrix that governs how coverage
gaps equalize, and a fixed-step integrator for that linear flow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import DegeneratePositionError, InvalidGainError
from .geometry import TWO_PI, PolarCoord, Vec2

HALF_PI = 0.5 * math.pi
# exponent log_3(2); the unique base-3 reading keeps the hunting factor in [0, 1]
# with its maximum at equal radii
RADIUS_EXPONENT = math.log(2.0) / math.log(3.0)


@dataclass(frozen=True)
class PursuerSpec:
    """Static per-pursuer parameters."""

    id: int
    max_speed: float
    speed_ratio: float

    def __post_init__(self):
        if self.max_speed <= 0.0:
            raise ValueError(f"max_speed must be positive, got {self.max_speed}")
        if not 0.0 < self.speed_ratio < 1.0:
            raise ValueError(f"speed_ratio must be in (0, 1), got {self.speed_ratio}")


@dataclass(frozen=True)
class ControlState:
    """Per-pursuer per-tick control quantities.

    v_surround and v_hunt are orthogonal by construction; v_correct is the
    potential-field correction (zero outside constrained mode); v_total is the
    velocity actually applied.
    """

    alpha_rate: float
    beta: float
    delta: float
    gamma: float
    k: float
    h: float
    v_surround: Vec2
    v_hunt: Vec2
    v_total: Vec2
    v_correct: Vec2 = Vec2(0.0, 0.0)


def encirclement_rate(eps_next: float, eps_prev: float, k: float) -> float:
    """Polar-angle rate k*(eps_next - eps_prev); positive is counterclockwise."""
    return k * (eps_next - eps_prev)


def tradeoff_beta(delta: float, gamma: float) -> float:
    """Trade-off angle (pi/2)*(1 - exp(-delta*gamma)), strictly below pi/2."""
    return HALF_PI * (1.0 - math.exp(-delta * gamma))


def surrounding_factor(
    eps_next: float, eps_prev: float, theta_next: float, theta_prev: float
) -> float:
    """Normalized gap imbalance 2*|eps_next - eps_prev| / (4*pi - theta_next + theta_prev).

    Clamped to [0, 1]: the bound holds along the ideal gap flow but closed-loop
    transients can exceed it.
    """
    delta = 2.0 * abs(eps_next - eps_prev) / (2.0 * TWO_PI - theta_next + theta_prev)
    if delta > 1.0:
        delta = 1.0
    return delta


def hunting_factor(r: float, r_prev: float, r_next: float) -> float:
    """Radius-based hunting weight sin(pi * (r / (r + r_prev + r_next))^log3(2)).

    Maximal (1.0) at equal radii; falls toward 0 when the pursuer is much
    nearer or much farther than its neighbors.
    """
    total = r + r_prev + r_next
    if total <= 0.0:
        raise DegeneratePositionError("all three radii are zero")
    gamma = math.sin(math.pi * math.pow(r / total, RADIUS_EXPONENT))
    if gamma < 0.0:
        gamma = 0.0
    return gamma


def gains_from_beta(
    beta: float, max_speed: float, r: float, eps_next: float, eps_prev: float
) -> Tuple[float, float]:
    """Surrounding gain k and hunting gain h that realize the trade-off angle.

    k = V*sin(beta) / (r*|eps_next - eps_prev|) when both the gap imbalance and
    beta are nonzero; otherwise k falls back to 1. h = V*cos(beta)/r always.

    Raises:
        DegeneratePositionError: r is zero.
    """
    if r <= 0.0:
        raise DegeneratePositionError("zero polar radius")
    gap = abs(eps_next - eps_prev)
    h = max_speed * math.cos(beta) / r
    if gap != 0.0 and beta != 0.0:
        k = max_speed * math.sin(beta) / (r * gap)
    else:
        k = 1.0
    return k, h


def pursuit_velocity(
    polar: PolarCoord,
    eps_prev: float,
    eps_next: float,
    spec: PursuerSpec,
    r_prev: float,
    r_next: float,
    theta_prev: float,
    theta_next: float,
) -> ControlState:
    """Compose the surrounding and hunting components for one pursuer.

    Inputs are the pursuer's polar coordinate, its two coverage gaps (previous
    and next in ring order), and its ring neighbors' radii and occupied angles.
    Outside the k=1 fallback (zero gap imbalance or zero beta) the composed
    speed equals the pursuer's max speed.
    """
    if polar.r <= 0.0:
        raise DegeneratePositionError("zero polar radius")
    delta = surrounding_factor(eps_next, eps_prev, theta_next, theta_prev)
    gamma = hunting_factor(polar.r, r_prev, r_next)
    beta = tradeoff_beta(delta, gamma)
    k, h = gains_from_beta(beta, spec.max_speed, polar.r, eps_next, eps_prev)
    alpha_rate = encirclement_rate(eps_next, eps_prev, k)

    sin_a = math.sin(polar.alpha)
    cos_a = math.cos(polar.alpha)
    tangential = k * polar.r * (eps_next - eps_prev)
    v_surround = Vec2(-tangential * sin_a, tangential * cos_a)
    radial = h * polar.r
    v_hunt = Vec2(-radial * cos_a, -radial * sin_a)
    v_total = v_surround + v_hunt
    return ControlState(
        alpha_rate=alpha_rate,
        beta=beta,
        delta=delta,
        gamma=gamma,
        k=k,
        h=h,
        v_surround=v_surround,
        v_hunt=v_hunt,
        v_total=v_total,
    )


@dataclass(frozen=True)
class ConsensusMatrix:
    """Ring consensus matrix for the coverage-gap flow d(eps)/dt = -M @ eps."""

    entries: np.ndarray
    gains: tuple

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)


def consensus_matrix(gains: Sequence[float]) -> ConsensusMatrix:
    """Build the symmetric PSD ring matrix from surrounding gains.

    Row j couples gap j to its ring neighbors: diagonal k_j + k_{j+1},
    off-diagonals -k_{j+1} forward and -k_j backward (indices wrap).

    Raises:
        InvalidGainError: any gain <= 0 or fewer than two gains.
    """
    n = len(gains)
    if n < 2:
        raise InvalidGainError("need at least two gains")
    for g in gains:
        if g <= 0.0:
            raise InvalidGainError(f"gains must be positive, got {g}")
    m = np.zeros((n, n), dtype=float)
    for j in range(n):
        nxt = (j + 1) % n
        m[j, j] = gains[j] + gains[nxt]
        m[j, nxt] -= gains[nxt]
        m[j, (j - 1) % n] -= gains[j]
    return ConsensusMatrix(entries=m, gains=tuple(float(g) for g in gains))


def integrate_epsilon_flow(
    eps0: Sequence[float], gains: Sequence[float], dt: float, horizon: float
) -> np.ndarray:
    """Fixed-step (explicit Euler) trajectory of the coverage-gap flow.

    Returns an array of shape (steps + 1, n) starting at eps0. The step update
    conserves the gap sum exactly (the matrix has zero column sums), and every
    component converges to the common mean. dt must satisfy dt * lambda_max < 2
    for stability; with gains k the largest eigenvalue is at most
    2 * max(k_j + k_{j+1}).
    """
    if dt <= 0.0 or horizon <= 0.0:
        raise ValueError("dt and horizon must be positive")
    m = consensus_matrix(gains).entries
    steps = int(round(horizon / dt))
    eps = np.asarray(eps0, dtype=float)
    out = np.empty((steps + 1, eps.size), dtype=float)
    out[0] = eps
    propagator = np.eye(eps.size) - dt * m
    for s in range(1, steps + 1):
        eps = propagator @ eps
        out[s] = eps
    return out
