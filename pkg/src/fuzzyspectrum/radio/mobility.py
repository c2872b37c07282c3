"""Random-waypoint trajectories advanced lazily to event times."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np


class RandomWaypoint:
    """Straight legs between uniform waypoints at a constant speed.

    Each user owns its generator, and legs are drawn only when the clock
    passes the end of the current one, so the trajectory is a function of
    time alone: querying it at different instants (or in a different order
    of increasing times) never changes where the user is.

    Args:
        rng: Generator reserved for this user's waypoints.
        area: ``(width, height)`` in meters.
        start: Initial position.
        speed: Constant speed in m/s; 0 keeps the user in place.
    """

    def __init__(
        self,
        rng: np.random.Generator,
        area: Tuple[float, float],
        start: Tuple[float, float],
        speed: float,
    ) -> None:
        if speed < 0:
            raise ValueError("Speed must be non-negative")
        self._rng = rng
        self._area = area
        self.speed = speed
        self._origin = start
        self._leg_start = 0.0
        self._target = start
        self._leg_end = 0.0
        self._heading = 0.0
        self._now = 0.0
        if speed > 0:
            self._next_leg(start, 0.0)

    def _next_leg(self, origin: Tuple[float, float], t0: float) -> None:
        target = (
            float(self._rng.uniform(0.0, self._area[0])),
            float(self._rng.uniform(0.0, self._area[1])),
        )
        length = math.hypot(target[0] - origin[0], target[1] - origin[1])
        self._origin = origin
        self._target = target
        self._leg_start = t0
        self._leg_end = t0 + length / self.speed
        if length > 0:
            self._heading = math.atan2(target[1] - origin[1], target[0] - origin[0])

    def advance(self, t: float) -> None:
        """Move the clock forward to ``t`` (earlier times are ignored)."""
        if t <= self._now:
            return
        self._now = t
        if self.speed == 0:
            return
        while self._leg_end <= t:
            self._next_leg(self._target, self._leg_end)

    def position(self, t: float) -> Tuple[float, float]:
        self.advance(t)
        if self.speed == 0 or self._leg_end <= self._leg_start:
            return self._origin
        frac = (max(t, self._leg_start) - self._leg_start) / (self._leg_end - self._leg_start)
        x0, y0 = self._origin
        x1, y1 = self._target
        return (x0 + frac * (x1 - x0), y0 + frac * (y1 - y0))

    def heading(self, t: float) -> float:
        self.advance(t)
        return self._heading
