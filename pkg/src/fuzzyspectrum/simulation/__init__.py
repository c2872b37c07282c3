"""Discrete-event spectrum-access simulation comparing FLS and NSU admission."""

from fuzzyspectrum.simulation.metrics import (
    METRIC_FIELDS,
    MetricsAccumulator,
    MetricsRow,
    aggregate_rows,
    channel_utilization,
    interference_spread,
    system_efficiency,
)
from fuzzyspectrum.simulation.policies import (
    AdmissionDecision,
    FlsPolicy,
    NsuPolicy,
    Outcome,
    dispatch_pending,
    fls_admit,
    make_policy,
    nsu_admit,
    repack,
)
from fuzzyspectrum.simulation.runner import (
    POLICIES,
    SweepPoint,
    build_replication,
    run_replication,
    run_sweep,
)
from fuzzyspectrum.simulation.state import Call, CallStatus, Channel, EventKind, SimState
from fuzzyspectrum.simulation.streams import ReplicationStreams

__all__ = [
    "METRIC_FIELDS",
    "MetricsAccumulator",
    "MetricsRow",
    "aggregate_rows",
    "channel_utilization",
    "interference_spread",
    "system_efficiency",
    "AdmissionDecision",
    "FlsPolicy",
    "NsuPolicy",
    "Outcome",
    "dispatch_pending",
    "fls_admit",
    "make_policy",
    "nsu_admit",
    "repack",
    "POLICIES",
    "SweepPoint",
    "build_replication",
    "run_replication",
    "run_sweep",
    "Call",
    "CallStatus",
    "Channel",
    "EventKind",
    "SimState",
    "ReplicationStreams",
]
