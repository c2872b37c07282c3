"""Admission policies: fuzzy-ranked contention (FLS) and first-come-first-served (NSU)."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Protocol, Tuple

from fuzzyspectrum.fuzzy.engine import FlsEngine, select_user
from fuzzyspectrum.radio.model import angle_to, doppler_shift
from fuzzyspectrum.simulation.state import EventKind, SimState

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    GRANTED = "granted"
    QUEUED = "queued"
    BLOCKED = "blocked"


@dataclass(frozen=True)
class AdmissionDecision:
    """What happened to an arriving call.

    ``possibilities`` holds the FLS ranking of the contenders when the call
    was ranked, in pending order; it is empty for NSU.
    """

    outcome: Outcome
    channel: Optional[int] = None
    possibilities: Tuple[float, ...] = ()


@dataclass(frozen=True)
class Grant:
    call_id: int
    channel: int
    possibilities: Tuple[float, ...]


def nsu_admit(state: SimState, call_id: int) -> AdmissionDecision:
    """Lowest-index free channel, or blocked immediately."""
    channel = state.lowest_free_channel()
    if channel is None:
        state.block(call_id)
        return AdmissionDecision(Outcome.BLOCKED)
    state.grant(call_id, channel)
    return AdmissionDecision(Outcome.GRANTED, channel)


def dispatch_pending(state: SimState, engine: FlsEngine) -> List[Grant]:
    """Rank the pending calls and hand free channels to the winners.

    Repeats until either channels or contenders run out; each round ranks
    the remaining contenders afresh.
    """
    grants: List[Grant] = []
    while state.pending:
        channel = state.lowest_free_channel()
        if channel is None:
            break
        population = state.descriptors()
        contenders = list(state.pending)
        selection = select_user(
            engine, [population[state.calls[c].user] for c in contenders]
        )
        winner = contenders[selection.index]
        possibilities = tuple(selection.possibilities)
        if logger.isEnabledFor(logging.DEBUG):
            _log_ranking(state, contenders, possibilities, winner)
        state.grant(winner, channel)
        grants.append(Grant(winner, channel, possibilities))
    return grants


def _log_ranking(
    state: SimState, contenders: List[int], possibilities: Tuple[float, ...], winner: int
) -> None:
    user = state.users[state.calls[winner].user]
    speed = min(user.speed, state.v_max)
    shift = doppler_shift(speed, angle_to(user, state.primary), state.primary.carrier_frequency)
    logger.debug(
        "t=%.3f FLS ranked %s -> %s; winner call %d (user %d, doppler %.1f Hz)",
        state.clock,
        contenders,
        [round(p, 4) for p in possibilities],
        winner,
        user.id,
        shift,
    )


def fls_admit(
    state: SimState, call_id: int, engine: FlsEngine, patience: float
) -> AdmissionDecision:
    """Join the contention set; free channels go to the highest possibility.

    With no free channel the call waits up to ``patience`` for one (QUEUED),
    or is blocked outright when patience is 0.
    """
    state.pending.append(call_id)
    granted = {g.call_id: g for g in dispatch_pending(state, engine)}
    if call_id in granted:
        g = granted[call_id]
        return AdmissionDecision(Outcome.GRANTED, g.channel, g.possibilities)

    if patience > 0:
        if math.isfinite(patience):
            state.schedule(state.clock + patience, EventKind.PATIENCE_TIMEOUT, call_id)
        return AdmissionDecision(Outcome.QUEUED)
    state.block(call_id)
    return AdmissionDecision(Outcome.BLOCKED)


def repack(state: SimState) -> int:
    """Move the highest secondary call down into the lowest free channel while that lowers it.

    Returns the number of handoffs made.
    """
    moves = 0
    while True:
        free = state.lowest_free_channel()
        top = state.highest_occupied_channel()
        if free is None or top is None or free > top:
            return moves
        state.move(state.channels[top].call_id, free)
        moves += 1


class AdmissionPolicy(Protocol):
    name: str

    def admit(self, state: SimState, call_id: int) -> AdmissionDecision: ...

    def on_channel_freed(self, state: SimState) -> None: ...

    def on_patience_timeout(self, state: SimState, call_id: int) -> None: ...


class NsuPolicy:
    """First-come-first-served baseline; no queue, no repacking."""

    name = "nsu"

    def admit(self, state: SimState, call_id: int) -> AdmissionDecision:
        return nsu_admit(state, call_id)

    def on_channel_freed(self, state: SimState) -> None:
        return None

    def on_patience_timeout(self, state: SimState, call_id: int) -> None:
        return None


class FlsPolicy:
    """Fuzzy-ranked admission with a patience-bounded contention set.

    Args:
        engine: Inference engine that scores contenders.
        patience: How long a contender waits for a channel; 0 disables waiting.
        repack: Keep the occupied band compact when channels free up.
    """

    name = "fls"

    def __init__(self, engine: FlsEngine, patience: float, repack: bool = True) -> None:
        if patience < 0:
            raise ValueError("patience must be non-negative")
        self.engine = engine
        self.patience = patience
        self.repack = repack

    def admit(self, state: SimState, call_id: int) -> AdmissionDecision:
        return fls_admit(state, call_id, self.engine, self.patience)

    def on_channel_freed(self, state: SimState) -> None:
        dispatch_pending(state, self.engine)
        if self.repack and not state.pending:
            repack(state)

    def on_patience_timeout(self, state: SimState, call_id: int) -> None:
        if call_id in state.pending:
            logger.debug("t=%.3f call %d gave up waiting", state.clock, call_id)
            state.block(call_id)


def make_policy(
    name: str, engine: Optional[FlsEngine] = None, patience: float = 1.0, repack: bool = True
) -> AdmissionPolicy:
    if name == "nsu":
        return NsuPolicy()
    if name == "fls":
        if engine is None:
            engine = FlsEngine.preset()
        return FlsPolicy(engine, patience, repack)
    raise ValueError(f"Unknown policy: {name!r}")


__all__ = [
    "Outcome",
    "AdmissionDecision",
    "Grant",
    "nsu_admit",
    "fls_admit",
    "dispatch_pending",
    "repack",
    "AdmissionPolicy",
    "NsuPolicy",
    "FlsPolicy",
    "make_policy",
]
