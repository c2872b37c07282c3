"""Channels, calls and the event-driven state of one replication."""

from __future__ import annotations

import heapq
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Any, Deque, Dict, List, Optional, Sequence, Tuple

from fuzzyspectrum.errors import SimulationError
from fuzzyspectrum.fuzzy.engine import DescriptorVector
from fuzzyspectrum.radio.mobility import RandomWaypoint
from fuzzyspectrum.radio.model import PrimaryUser, SecondaryUser, compute_descriptors
from fuzzyspectrum.simulation.metrics import MetricsAccumulator, interference_spread

logger = logging.getLogger(__name__)


@dataclass
class Channel:
    """One licensed band; ``occupant`` is the secondary user id holding it."""

    index: int
    frequency: float
    primary_active: bool = False
    occupant: Optional[int] = None
    call_id: Optional[int] = None

    @property
    def is_free(self) -> bool:
        return not self.primary_active and self.occupant is None


class CallStatus(str, Enum):
    PENDING = "pending"
    ACTIVE = "active"
    COMPLETED = "completed"
    BLOCKED = "blocked"
    DROPPED = "dropped"


@dataclass
class Call:
    id: int
    user: int
    arrival_time: float
    holding_time: float
    counted: bool = True
    status: CallStatus = CallStatus.PENDING
    channel: Optional[int] = None
    start_time: Optional[float] = None


class EventKind(IntEnum):
    ARRIVAL = 1
    DEPARTURE = 2
    PRIMARY_TOGGLE = 3
    PATIENCE_TIMEOUT = 4
    END = 5


@dataclass(order=True)
class Event:
    time: float
    seq: int
    kind: EventKind = field(compare=False)
    payload: Any = field(compare=False, default=None)


@dataclass
class UsageSample:
    time: float
    busy: int
    available: int


class SimState:
    """Mutable state of a single replication.

    Holds the clock, the event queue ordered by ``(time, sequence)``, the
    channels, the secondary users with their trajectories and utilization
    history, the calls, and the metric accumulator. Every mutation of the
    channel map goes through ``grant``, ``release``, ``move`` and ``drop`` so
    the accumulator and usage history stay consistent.

    Args:
        channels: Channels in index order.
        users: Secondary users, ids equal to their list index.
        primary: The primary transmitter the distance descriptor refers to.
        accumulator: Metric accumulator for this run.
        v_max: Speed that maps to mobility 10.
        initial_utilization: Per-user fallback utilization in percent.
        trajectories: Optional per-user motion; users stay put without one.
        utilization_window: Length of the usage history window.
        check_invariants: Verify conservation and primary safety at every event.
    """

    def __init__(
        self,
        channels: Sequence[Channel],
        users: Sequence[SecondaryUser],
        primary: PrimaryUser,
        accumulator: Optional[MetricsAccumulator] = None,
        v_max: float = 30.0,
        initial_utilization: Optional[Sequence[float]] = None,
        trajectories: Optional[Sequence[RandomWaypoint]] = None,
        utilization_window: float = 100.0,
        check_invariants: bool = False,
    ) -> None:
        if not channels:
            raise SimulationError("A simulation needs at least one channel")
        if not users:
            raise SimulationError("A simulation needs at least one secondary user")
        frequencies = [ch.frequency for ch in channels]
        if any(b <= a for a, b in zip(frequencies, frequencies[1:])):
            raise SimulationError("Channel frequencies must increase with index")

        self.clock = 0.0
        self.channels: List[Channel] = list(channels)
        self.users: List[SecondaryUser] = list(users)
        self.primary = primary
        self.acc = accumulator or MetricsAccumulator(len(self.channels))
        self.v_max = v_max
        self.initial_utilization: List[float] = (
            list(initial_utilization)
            if initial_utilization is not None
            else [0.0] * len(self.users)
        )
        self.trajectories = list(trajectories) if trajectories is not None else None
        self.utilization_window = utilization_window
        self.check = check_invariants

        # live calls only; finished calls leave the map
        self.calls: Dict[int, Call] = {}
        self.calls_finished = 0
        self.pending: List[int] = []
        self.history: List[Deque[UsageSample]] = [deque() for _ in self.users]
        self.events_processed = 0

        self._queue: List[Event] = []
        self._seq = itertools.count()
        self._call_ids = itertools.count()

    # ------------------------------------------------------------------
    # Event queue
    # ------------------------------------------------------------------

    def schedule(self, time: float, kind: EventKind, payload: Any = None) -> None:
        if time < self.clock:
            raise SimulationError(f"Cannot schedule {kind.name} in the past ({time} < {self.clock})")
        heapq.heappush(self._queue, Event(time, next(self._seq), kind, payload))

    def pop_event(self) -> Optional[Event]:
        """Next event; the clock and accumulators advance to its time."""
        if not self._queue:
            return None
        event = heapq.heappop(self._queue)
        self.advance_clock(event.time)
        self.events_processed += 1
        return event

    def advance_clock(self, now: float) -> None:
        if now < self.clock:
            raise SimulationError(f"Event time went backwards: {now} < {self.clock}")
        free, allocated, primary = self.channel_counts()
        self.acc.advance(now, free, allocated, primary, interference_spread(self))
        self.clock = now

    # ------------------------------------------------------------------
    # Channel queries
    # ------------------------------------------------------------------

    def channel_counts(self) -> Tuple[int, int, int]:
        """``(free, secondary-occupied, primary-occupied)``."""
        free = sum(1 for ch in self.channels if ch.is_free)
        allocated = sum(1 for ch in self.channels if ch.occupant is not None)
        primary = sum(1 for ch in self.channels if ch.primary_active)
        return free, allocated, primary

    def free_channels(self) -> List[int]:
        return [ch.index for ch in self.channels if ch.is_free]

    def lowest_free_channel(self) -> Optional[int]:
        for ch in self.channels:
            if ch.is_free:
                return ch.index
        return None

    def highest_occupied_channel(self) -> Optional[int]:
        for ch in reversed(self.channels):
            if ch.occupant is not None:
                return ch.index
        return None

    def available_count(self) -> int:
        return sum(1 for ch in self.channels if not ch.primary_active)

    # ------------------------------------------------------------------
    # Calls
    # ------------------------------------------------------------------

    def new_call(self, user: int, holding_time: float) -> Call:
        call = Call(
            id=next(self._call_ids),
            user=user,
            arrival_time=self.clock,
            holding_time=holding_time,
            counted=self.clock >= self.acc.warmup,
        )
        self.calls[call.id] = call
        if call.counted:
            self.acc.arrivals += 1
        return call

    def grant(self, call_id: int, channel: int) -> None:
        """Put a pending call on a free channel and schedule its departure."""
        call = self.calls[call_id]
        ch = self.channels[channel]
        if not ch.is_free:
            raise SimulationError(f"Channel {channel} is not free for call {call_id}")
        if call.status is not CallStatus.PENDING:
            raise SimulationError(f"Call {call_id} is {call.status.value}, not pending")
        if call_id in self.pending:
            self.pending.remove(call_id)
        ch.occupant, ch.call_id = call.user, call.id
        call.status, call.channel, call.start_time = CallStatus.ACTIVE, channel, self.clock
        if call.counted:
            self.acc.granted += 1
            self.acc.total_wait += self.clock - call.arrival_time
        self._set_busy(call.user, +1)
        self.schedule(self.clock + call.holding_time, EventKind.DEPARTURE, call.id)

    def block(self, call_id: int) -> None:
        call = self.calls[call_id]
        if call_id in self.pending:
            self.pending.remove(call_id)
        call.status = CallStatus.BLOCKED
        if call.counted:
            self.acc.blocked += 1
        self._retire(call_id)

    def release(self, call_id: int) -> int:
        """Complete an active call; returns the freed channel."""
        call = self.calls[call_id]
        channel = self._vacate(call)
        call.status = CallStatus.COMPLETED
        self._retire(call_id)
        return channel

    def drop(self, call_id: int) -> None:
        call = self.calls[call_id]
        self._vacate(call)
        call.status = CallStatus.DROPPED
        if call.counted:
            self.acc.dropped += 1
        self._retire(call_id)
        logger.debug("t=%.3f call %d of user %d dropped", self.clock, call.id, call.user)

    def move(self, call_id: int, channel: int) -> None:
        """Hand an active call off to another free channel."""
        call = self.calls[call_id]
        target = self.channels[channel]
        if not target.is_free:
            raise SimulationError(f"Handoff target {channel} is not free")
        source = self.channels[call.channel]
        source.occupant, source.call_id = None, None
        target.occupant, target.call_id = call.user, call.id
        call.channel = channel
        if call.counted:
            self.acc.handoffs += 1
        logger.debug(
            "t=%.3f call %d handed off %d -> %d", self.clock, call.id, source.index, channel
        )

    def _retire(self, call_id: int) -> None:
        # no queued event reads a finished call
        del self.calls[call_id]
        self.calls_finished += 1

    def _vacate(self, call: Call) -> int:
        if call.status is not CallStatus.ACTIVE or call.channel is None:
            raise SimulationError(f"Call {call.id} is not on a channel")
        ch = self.channels[call.channel]
        ch.occupant, ch.call_id = None, None
        channel = call.channel
        call.channel = None
        self._set_busy(call.user, -1)
        return channel

    # ------------------------------------------------------------------
    # Users and descriptors
    # ------------------------------------------------------------------

    def _set_busy(self, user_id: int, delta: int) -> None:
        user = self.users[user_id]
        user.busy_spectrum_count += delta
        user.available_spectrum_count = self.available_count()
        self.history[user_id].append(
            UsageSample(self.clock, user.busy_spectrum_count, user.available_spectrum_count)
        )

    def record_availability(self) -> None:
        """Close every user's usage segment after the available count changed."""
        available = self.available_count()
        for user, samples in zip(self.users, self.history):
            user.available_spectrum_count = available
            if samples and samples[-1].available != available:
                samples.append(UsageSample(self.clock, user.busy_spectrum_count, available))

    def utilization(self, user_id: int) -> float:
        """Time-averaged busy over available spectrum in percent across the usage window.

        Each sample holds until the next one; the newest holds until ``clock``.
        A user with no recorded usage keeps its initial draw.
        """
        samples = self.history[user_id]
        horizon = self.clock - self.utilization_window
        # the newest sample at or before the horizon still covers the window start
        while len(samples) > 1 and samples[1].time <= horizon:
            samples.popleft()
        ends = itertools.chain(itertools.islice(samples, 1, None), (None,))
        busy = available = 0.0
        for sample, following in zip(samples, ends):
            start = max(sample.time, horizon)
            end = following.time if following is not None else self.clock
            if end > start:
                busy += sample.busy * (end - start)
                available += sample.available * (end - start)
        if available <= 0:
            return self.initial_utilization[user_id]
        return 100.0 * busy / available

    def refresh_positions(self) -> None:
        if self.trajectories is None:
            return
        for user, path in zip(self.users, self.trajectories):
            user.position = path.position(self.clock)
            user.heading = path.heading(self.clock)

    def descriptors(self) -> List[DescriptorVector]:
        """Current descriptors of every user, distances normalized over all of them."""
        self.refresh_positions()
        return compute_descriptors(
            self.users,
            self.primary,
            self.v_max,
            [self.utilization(u.id) for u in self.users],
        )

    # ------------------------------------------------------------------
    # Invariants
    # ------------------------------------------------------------------

    def check_invariants(self) -> None:
        """Raise ``SimulationError`` if conservation or primary safety fails."""
        free, allocated, primary = self.channel_counts()
        if free + allocated + primary != len(self.channels):
            raise SimulationError(
                f"t={self.clock}: channel counts {free}+{allocated}+{primary} "
                f"!= {len(self.channels)}"
            )
        for ch in self.channels:
            if ch.primary_active and ch.occupant is not None:
                raise SimulationError(
                    f"t={self.clock}: user {ch.occupant} transmits under primary on channel {ch.index}"
                )
            if ch.call_id is not None:
                call = self.calls[ch.call_id]
                if call.status is not CallStatus.ACTIVE or call.channel != ch.index:
                    raise SimulationError(f"t={self.clock}: channel {ch.index} map is stale")
        for call_id in self.pending:
            if self.calls[call_id].status is not CallStatus.PENDING:
                raise SimulationError(f"t={self.clock}: call {call_id} pending twice")
