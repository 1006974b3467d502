"""Pluggable evader policies.

Strategies are deterministic state machines driven by the engine tick: they
receive the frame snapshot (evader position, pursuer positions and radii) and
return the evader velocity for the next integration step. Output magnitude
never exceeds the evader's max speed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

STRATEGIES = ("flee", "static", "scripted", "external", "random")


@dataclass(frozen=True)
class EvaderSpec:
    """Evader parameters as loaded from a scenario."""

    max_speed: float
    strategy: str = "flee"
    flee_gain: float = 140.0
    include_origin_term: bool = True
    waypoints: tuple = ()
    seed: int = 0
    heading_hold: float = 1.0  # seconds between random-heading redraws

    def __post_init__(self):
        if self.max_speed <= 0.0:
            raise ValueError(f"max_speed must be positive, got {self.max_speed}")
        if self.flee_gain < 0.0:
            raise ValueError(f"flee_gain must be nonnegative, got {self.flee_gain}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")


def flee_velocity(
    ex: float,
    ey: float,
    px: Sequence[float],
    py: Sequence[float],
    radii: Sequence[float],
    max_speed: float,
    gain: float,
    include_origin_term: bool = True,
    fallback: Tuple[float, float] = (0.0, 0.0),
) -> Tuple[float, float]:
    """Weighted flee velocity: run from all pursuers, nearer ones weigh more.

    Direction is the normalized sum of gain * (evader - pursuer) / radius plus,
    by default, the evader position itself (the published law is origin-
    dependent; pass include_origin_term=False to drop that term). A zero sum
    returns ``fallback`` (the caller's held velocity).
    """
    sx = 0.0
    sy = 0.0
    for i in range(len(px)):
        sx += gain * (ex - px[i]) / radii[i]
        sy += gain * (ey - py[i]) / radii[i]
    if include_origin_term:
        sx += ex
        sy += ey
    norm = math.sqrt(sx * sx + sy * sy)
    if norm == 0.0:
        return fallback
    return (max_speed * sx / norm, max_speed * sy / norm)


class EvaderStrategy:
    """Base: override velocity(); reset() restores initial state."""

    def reset(self) -> None:
        pass

    def velocity(
        self,
        tick: int,
        t: float,
        ex: float,
        ey: float,
        px: Sequence[float],
        py: Sequence[float],
        radii: Sequence[float],
    ) -> Tuple[float, float]:
        raise NotImplementedError


class StaticStrategy(EvaderStrategy):
    def velocity(self, tick, t, ex, ey, px, py, radii):
        return (0.0, 0.0)


class FleeStrategy(EvaderStrategy):
    """The weighted flee law with zero-argument hold of the previous velocity."""

    def __init__(self, max_speed: float, gain: float = 140.0, include_origin_term: bool = True):
        self.max_speed = max_speed
        self.gain = gain
        self.include_origin_term = include_origin_term
        self._held = (0.0, 0.0)

    def reset(self):
        self._held = (0.0, 0.0)

    def velocity(self, tick, t, ex, ey, px, py, radii):
        v = flee_velocity(
            ex, ey, px, py, radii, self.max_speed, self.gain,
            self.include_origin_term, fallback=self._held,
        )
        self._held = v
        return v


class ScriptedStrategy(EvaderStrategy):
    """Run at max speed through a waypoint list, then stop."""

    def __init__(self, max_speed: float, waypoints: Sequence[Tuple[float, float]], dt: float):
        if not waypoints:
            raise ValueError("scripted strategy needs at least one waypoint")
        self.max_speed = max_speed
        self.waypoints = [(float(x), float(y)) for x, y in waypoints]
        self.dt = dt
        self._index = 0

    def reset(self):
        self._index = 0

    def velocity(self, tick, t, ex, ey, px, py, radii):
        reach = self.max_speed * self.dt
        while self._index < len(self.waypoints):
            wx, wy = self.waypoints[self._index]
            dx = wx - ex
            dy = wy - ey
            d = math.sqrt(dx * dx + dy * dy)
            if d > reach:
                return (self.max_speed * dx / d, self.max_speed * dy / d)
            self._index += 1
        return (0.0, 0.0)


class ExternalStrategy(EvaderStrategy):
    """Heading commands from outside (a human), zero-order held between commands.

    Commands submitted between ticks take effect at the next tick boundary.
    Before the first command the evader holds still; a stop command holds zero
    velocity until the next steer.
    """

    def __init__(self, max_speed: float):
        self.max_speed = max_speed
        self._pending: Optional[dict] = None
        self._vx = 0.0
        self._vy = 0.0

    def reset(self):
        self._pending = None
        self._vx = 0.0
        self._vy = 0.0

    def submit(self, command: dict) -> None:
        """Queue a command: {"op": "steer", "heading": radians} or {"op": "stop"}."""
        self._pending = dict(command)

    def velocity(self, tick, t, ex, ey, px, py, radii):
        if self._pending is not None:
            cmd = self._pending
            self._pending = None
            if cmd.get("op") == "stop":
                self._vx = 0.0
                self._vy = 0.0
            elif cmd.get("op") == "steer":
                heading = float(cmd["heading"])
                self._vx = self.max_speed * math.cos(heading)
                self._vy = self.max_speed * math.sin(heading)
        return (self._vx, self._vy)


class RandomHeadingStrategy(EvaderStrategy):
    """Seeded uniform-random heading, redrawn every hold_ticks ticks."""

    def __init__(self, max_speed: float, seed: int, hold_ticks: int):
        if hold_ticks < 1:
            raise ValueError("hold_ticks must be at least 1")
        self.max_speed = max_speed
        self.seed = seed
        self.hold_ticks = hold_ticks
        self._rng = random.Random(seed)
        self._vx = 0.0
        self._vy = 0.0

    def reset(self):
        self._rng = random.Random(self.seed)
        self._vx = 0.0
        self._vy = 0.0

    def velocity(self, tick, t, ex, ey, px, py, radii):
        if tick % self.hold_ticks == 0:
            heading = self._rng.uniform(0.0, 2.0 * math.pi)
            self._vx = self.max_speed * math.cos(heading)
            self._vy = self.max_speed * math.sin(heading)
        return (self._vx, self._vy)


def build_strategy(spec: EvaderSpec, dt: float) -> EvaderStrategy:
    """Instantiate the strategy named by the spec."""
    if spec.strategy == "static":
        return StaticStrategy()
    if spec.strategy == "flee":
        return FleeStrategy(spec.max_speed, spec.flee_gain, spec.include_origin_term)
    if spec.strategy == "scripted":
        return ScriptedStrategy(spec.max_speed, spec.waypoints, dt)
    if spec.strategy == "external":
        return ExternalStrategy(spec.max_speed)
    if spec.strategy == "random":
        hold_ticks = max(1, int(round(spec.heading_hold / dt)))
        return RandomHeadingStrategy(spec.max_speed, spec.seed, hold_ticks)
    raise ValueError(f"unknown strategy {spec.strategy!r}")
