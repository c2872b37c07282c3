"""Time-weighted metric accumulation and the per-arrival-rate output record."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields, replace
from typing import TYPE_CHECKING, List, Optional, Sequence

import numpy as np

if TYPE_CHECKING:
    from fuzzyspectrum.simulation.state import SimState

logger = logging.getLogger(__name__)


def interference_spread(state: "SimState") -> float:
    """``|f_max - f_min|`` over secondary-occupied channels; 0 below two channels."""
    occupied = [ch.frequency for ch in state.channels if ch.occupant is not None]
    if len(occupied) < 2:
        return 0.0
    return abs(max(occupied) - min(occupied))


def system_efficiency(processed_erlang: float, offered_erlang: float) -> float:
    """Processed over offered traffic, clamped to [0, 1].

    Raises:
        ValueError: If no traffic was offered.
    """
    if offered_erlang <= 0:
        raise ValueError("System efficiency undefined with zero offered traffic")
    return min(max(processed_erlang / offered_erlang, 0.0), 1.0)


def channel_utilization(acc: "MetricsAccumulator") -> float:
    """Time average of busy secondary channels over total channels."""
    if acc.observed_time <= 0:
        return 0.0
    return acc.allocated_integral / (acc.num_channels * acc.observed_time)


class MetricsAccumulator:
    """Integrates channel counts over the observation window.

    The window starts at ``warmup``; anything before it is ignored. Call
    ``advance`` before every state change with the counts that held since the
    previous call.

    Args:
        num_channels: Total channels, the utilization denominator.
        warmup: Start of the observation window.
    """

    def __init__(self, num_channels: int, warmup: float = 0.0) -> None:
        self.num_channels = num_channels
        self.warmup = warmup
        self.last_time = 0.0

        # Time integrals
        self.free_integral = 0.0
        self.allocated_integral = 0.0
        self.primary_integral = 0.0
        self.spread_integral = 0.0

        # Call counters (calls arriving inside the window)
        self.arrivals = 0
        self.granted = 0
        self.blocked = 0
        self.dropped = 0
        self.handoffs = 0
        self.total_wait = 0.0

    @property
    def observed_time(self) -> float:
        return max(self.last_time - self.warmup, 0.0)

    def advance(
        self, now: float, free: int, allocated: int, primary: int, spread: float
    ) -> None:
        """Add ``counts * dt`` for the part of ``[last_time, now]`` past warm-up."""
        if now < self.last_time:
            raise ValueError(f"time went backwards: {now} < {self.last_time}")
        start = max(self.last_time, self.warmup)
        if now > start:
            dt = now - start
            self.free_integral += free * dt
            self.allocated_integral += allocated * dt
            self.primary_integral += primary * dt
            self.spread_integral += spread * dt
        self.last_time = now

    def blocking_probability(self) -> float:
        decided = self.granted + self.blocked
        return self.blocked / decided if decided else 0.0

    def dropping_probability(self) -> float:
        return self.dropped / self.granted if self.granted else 0.0

    def mean_wait(self) -> float:
        return self.total_wait / self.granted if self.granted else 0.0

    def time_average(self, integral: float) -> float:
        t = self.observed_time
        return integral / t if t > 0 else 0.0

    def __repr__(self) -> str:
        return (
            f"MetricsAccumulator({self.arrivals} arrivals, {self.granted} granted, "
            f"{self.blocked} blocked, {self.observed_time:.1f} observed)"
        )


@dataclass(frozen=True)
class MetricsRow:
    """Metrics of one replication, or the mean over replications of one sweep point."""

    arrival_rate: float
    policy: str
    blocking_probability: float
    mean_free_spectrum: float
    mean_allocated_spectrum: float
    interference_spread: float
    system_efficiency: float
    channel_utilization: float
    dropping_probability: float = 0.0
    mean_primary_spectrum: float = 0.0
    mean_wait: float = 0.0
    handoffs: float = 0.0
    seed: Optional[int] = None
    replications: int = 1
    blocking_stderr: float = 0.0


_AVERAGED = (
    "blocking_probability",
    "mean_free_spectrum",
    "mean_allocated_spectrum",
    "interference_spread",
    "system_efficiency",
    "channel_utilization",
    "dropping_probability",
    "mean_primary_spectrum",
    "mean_wait",
    "handoffs",
)


def metrics_from_accumulator(
    acc: MetricsAccumulator,
    arrival_rate: float,
    policy: str,
    offered_erlang: float,
    seed: Optional[int] = None,
) -> MetricsRow:
    processed = acc.time_average(acc.allocated_integral)
    return MetricsRow(
        arrival_rate=arrival_rate,
        policy=policy,
        blocking_probability=acc.blocking_probability(),
        mean_free_spectrum=acc.time_average(acc.free_integral),
        mean_allocated_spectrum=processed,
        interference_spread=acc.time_average(acc.spread_integral),
        system_efficiency=system_efficiency(processed, offered_erlang),
        channel_utilization=channel_utilization(acc),
        dropping_probability=acc.dropping_probability(),
        mean_primary_spectrum=acc.time_average(acc.primary_integral),
        mean_wait=acc.mean_wait(),
        handoffs=float(acc.handoffs),
        seed=seed,
    )


def aggregate_rows(rows: Sequence[MetricsRow]) -> MetricsRow:
    """Mean of replication rows, sorted by seed first so the sum order is fixed.

    Raises:
        ValueError: If ``rows`` is empty or mixes sweep points.
    """
    if not rows:
        raise ValueError("Cannot aggregate zero replications")
    keys = {(r.arrival_rate, r.policy) for r in rows}
    if len(keys) != 1:
        raise ValueError(f"Rows mix sweep points: {sorted(keys)}")
    ordered: List[MetricsRow] = sorted(rows, key=lambda r: (r.seed is None, r.seed))

    means = {
        name: float(np.mean([getattr(r, name) for r in ordered])) for name in _AVERAGED
    }
    blocking = np.array([r.blocking_probability for r in ordered])
    stderr = (
        float(np.std(blocking, ddof=1) / math.sqrt(len(blocking)))
        if len(blocking) > 1
        else 0.0
    )
    return replace(
        ordered[0],
        **means,
        seed=None,
        replications=len(ordered),
        blocking_stderr=stderr,
    )


METRIC_FIELDS = tuple(f.name for f in fields(MetricsRow))
