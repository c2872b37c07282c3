"""Replications and arrival-rate sweeps.

One replication is a sequential discrete-event run. A sweep fans the
``(arrival rate, policy, seed)`` grid out over an optional process pool and
reduces the results in sorted order, so the aggregate does not depend on
which worker finished first.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from fuzzyspectrum.config.experiment import RadioConfig, SimConfig
from fuzzyspectrum.fuzzy.engine import FlsEngine
from fuzzyspectrum.radio.mobility import RandomWaypoint
from fuzzyspectrum.radio.model import SecondaryUser
from fuzzyspectrum.simulation.metrics import (
    MetricsAccumulator,
    MetricsRow,
    aggregate_rows,
    metrics_from_accumulator,
)
from fuzzyspectrum.simulation.policies import AdmissionPolicy, make_policy
from fuzzyspectrum.simulation.state import CallStatus, Channel, EventKind, SimState
from fuzzyspectrum.simulation.streams import ReplicationStreams

logger = logging.getLogger(__name__)

PolicyName = Literal["fls", "nsu"]
POLICIES: Tuple[PolicyName, ...] = ("fls", "nsu")


@dataclass
class Replication:
    """A built replication: state, policy and streams, ready to run."""

    config: SimConfig
    arrival_rate: float
    policy: AdmissionPolicy
    streams: ReplicationStreams
    state: SimState

    def run(self) -> MetricsRow:
        config, state = self.config, self.state
        arrivals = self.streams.arrivals

        state.schedule(config.sim_duration, EventKind.END)
        state.schedule(float(arrivals.exponential(1.0 / self.arrival_rate)), EventKind.ARRIVAL)

        while True:
            event = state.pop_event()
            if event is None or event.kind is EventKind.END:
                break
            if event.kind is EventKind.ARRIVAL:
                self._on_arrival()
            elif event.kind is EventKind.DEPARTURE:
                self._on_departure(event.payload)
            elif event.kind is EventKind.PRIMARY_TOGGLE:
                self._on_primary_toggle(event.payload)
            elif event.kind is EventKind.PATIENCE_TIMEOUT:
                self.policy.on_patience_timeout(state, event.payload)
            if state.check:
                state.check_invariants()

        row = metrics_from_accumulator(
            state.acc,
            self.arrival_rate,
            self.policy.name,
            config.offered_load(self.arrival_rate),
            seed=self.streams.seed,
        )
        logger.debug(
            "Replication lambda=%g policy=%s seed=%d: %d events, %r",
            self.arrival_rate,
            self.policy.name,
            self.streams.seed,
            state.events_processed,
            state.acc,
        )
        return row

    # ------------------------------------------------------------------
    # Event handlers
    # ------------------------------------------------------------------

    def _on_arrival(self) -> None:
        state, arrivals = self.state, self.streams.arrivals
        user = int(arrivals.integers(len(state.users)))
        holding = float(arrivals.exponential(self.config.mean_holding_time))
        gap = float(arrivals.exponential(1.0 / self.arrival_rate))
        state.schedule(state.clock + gap, EventKind.ARRIVAL)

        call = state.new_call(user, holding)
        decision = self.policy.admit(state, call.id)
        logger.debug(
            "t=%.3f call %d (user %d): %s channel=%s",
            state.clock,
            call.id,
            user,
            decision.outcome.value,
            decision.channel,
        )

    def _on_departure(self, call_id: int) -> None:
        state = self.state
        call = state.calls.get(call_id)
        if call is None or call.status is not CallStatus.ACTIVE:
            return  # dropped earlier
        state.release(call_id)
        self.policy.on_channel_freed(state)

    def _on_primary_toggle(self, index: int) -> None:
        state, config = self.state, self.config
        channel = state.channels[index]
        rng = self.streams.primary[index]

        if channel.primary_active:
            channel.primary_active = False
            state.record_availability()
            if config.primary_on_rate > 0:
                state.schedule(
                    state.clock + float(rng.exponential(1.0 / config.primary_on_rate)),
                    EventKind.PRIMARY_TOGGLE,
                    index,
                )
            self.policy.on_channel_freed(state)
            return

        channel.primary_active = True
        state.record_availability()
        if config.primary_off_rate > 0:
            state.schedule(
                state.clock + float(rng.exponential(1.0 / config.primary_off_rate)),
                EventKind.PRIMARY_TOGGLE,
                index,
            )
        if channel.call_id is not None:
            target = state.lowest_free_channel()
            if target is None:
                state.drop(channel.call_id)
            else:
                state.move(channel.call_id, target)


def build_replication(
    config: SimConfig,
    arrival_rate: float,
    policy: PolicyName,
    seed: int,
    engine: Optional[FlsEngine] = None,
    radio: Optional[RadioConfig] = None,
) -> Replication:
    """Draw the topology and initial primary states for one replication.

    Raises:
        ValueError: If the arrival rate is not positive or the policy is unknown.
    """
    if arrival_rate <= 0:
        raise ValueError(f"arrival rate must be positive, got {arrival_rate}")
    radio = radio or RadioConfig()
    width, height = config.area
    streams = ReplicationStreams(seed, config.num_channels, config.num_secondary_users)
    topo = streams.topology

    primary = radio.primary_user(
        (float(topo.uniform(0.0, width)), float(topo.uniform(0.0, height)))
    )
    starts: List[Tuple[float, float]] = []
    speeds: List[float] = []
    initial_utilization: List[float] = []
    for _ in range(config.num_secondary_users):
        starts.append((float(topo.uniform(0.0, width)), float(topo.uniform(0.0, height))))
        speeds.append(float(topo.uniform(0.0, config.max_speed)))
        initial_utilization.append(float(topo.uniform(0.0, 100.0)))

    channels = [
        Channel(index=i, frequency=config.channel_frequency(i))
        for i in range(config.num_channels)
    ]
    p_on = config.primary_on_probability
    for channel, rng in zip(channels, streams.primary):
        channel.primary_active = bool(rng.random() < p_on)
    available = sum(1 for ch in channels if not ch.primary_active)

    users = [
        SecondaryUser(
            id=i, position=start, speed=speed, available_spectrum_count=available
        )
        for i, (start, speed) in enumerate(zip(starts, speeds))
    ]
    trajectories = [
        RandomWaypoint(rng, config.area, start, speed)
        for rng, start, speed in zip(streams.mobility, starts, speeds)
    ]

    state = SimState(
        channels=channels,
        users=users,
        primary=primary,
        accumulator=MetricsAccumulator(config.num_channels, warmup=config.warmup_time),
        v_max=config.max_speed,
        initial_utilization=initial_utilization,
        trajectories=trajectories,
        utilization_window=config.utilization_window,
        check_invariants=config.check_invariants,
    )

    for channel, rng in zip(channels, streams.primary):
        rate = config.primary_off_rate if channel.primary_active else config.primary_on_rate
        if rate > 0:
            state.schedule(float(rng.exponential(1.0 / rate)), EventKind.PRIMARY_TOGGLE, channel.index)

    return Replication(
        config=config,
        arrival_rate=arrival_rate,
        policy=make_policy(policy, engine, config.effective_patience, config.fls_repack),
        streams=streams,
        state=state,
    )


def run_replication(
    config: SimConfig,
    arrival_rate: float,
    policy: PolicyName,
    seed: int,
    engine: Optional[FlsEngine] = None,
    radio: Optional[RadioConfig] = None,
) -> MetricsRow:
    """Run one replication; deterministic in ``(config, arrival_rate, policy, seed)``."""
    return build_replication(config, arrival_rate, policy, seed, engine, radio).run()


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------


@dataclass
class SweepPoint:
    """Aggregated rows for one arrival rate, keyed by policy."""

    arrival_rate: float
    rows: Dict[str, MetricsRow] = field(default_factory=dict)
    replications: Dict[str, List[MetricsRow]] = field(default_factory=dict)

    @property
    def fls(self) -> Optional[MetricsRow]:
        return self.rows.get("fls")

    @property
    def nsu(self) -> Optional[MetricsRow]:
        return self.rows.get("nsu")


_Task = Tuple[SimConfig, float, PolicyName, int, Optional[FlsEngine], Optional[RadioConfig]]


def _run_task(task: _Task) -> MetricsRow:
    config, rate, policy, seed, engine, radio = task
    return run_replication(config, rate, policy, seed, engine, radio)


def run_sweep(
    config: SimConfig,
    engine: Optional[FlsEngine] = None,
    radio: Optional[RadioConfig] = None,
    policies: Sequence[PolicyName] = POLICIES,
    workers: int = 1,
) -> List[SweepPoint]:
    """Average ``config.replications`` seeds per arrival rate and policy.

    Replication ``k`` uses seed ``rng_seed + k`` for every policy and rate,
    so the policies are compared on common random numbers.
    """
    if not policies:
        raise ValueError("At least one policy is required")
    engine = engine or FlsEngine.preset()
    rates = sorted(set(config.arrival_rates))
    seeds = [config.rng_seed + k for k in range(config.replications)]
    tasks: List[_Task] = [
        (config, rate, policy, seed, engine if policy == "fls" else None, radio)
        for rate in rates
        for policy in policies
        for seed in seeds
    ]
    logger.info(
        "Sweep: %d rates x %d policies x %d replications (%d workers)",
        len(rates),
        len(policies),
        len(seeds),
        workers,
    )

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(task) for task in tasks]

    results.sort(key=lambda r: (r.arrival_rate, r.policy, r.seed))

    points: List[SweepPoint] = []
    for rate in rates:
        point = SweepPoint(arrival_rate=rate)
        for policy in sorted(policies):
            reps = [r for r in results if r.arrival_rate == rate and r.policy == policy]
            point.replications[policy] = reps
            point.rows[policy] = aggregate_rows(reps)
            logger.info(
                "lambda=%g %s: blocking=%.4f utilization=%.4f",
                rate,
                policy,
                point.rows[policy].blocking_probability,
                point.rows[policy].channel_utilization,
            )
        points.append(point)
    return points


__all__ = [
    "POLICIES",
    "PolicyName",
    "Replication",
    "SweepPoint",
    "build_replication",
    "run_replication",
    "run_sweep",
]
