"""Unit tests for fuzzyspectrum.simulation.metrics."""

import pytest

from fuzzyspectrum.radio.model import PrimaryUser, SecondaryUser
from fuzzyspectrum.simulation.metrics import (
    MetricsAccumulator,
    MetricsRow,
    aggregate_rows,
    channel_utilization,
    interference_spread,
    metrics_from_accumulator,
    system_efficiency,
)
from fuzzyspectrum.simulation.state import Channel, SimState


def _state(frequencies_mhz, occupied):
    channels = [Channel(i, f * 1e6) for i, f in enumerate(frequencies_mhz)]
    for i in occupied:
        channels[i].occupant = 0
    users = [SecondaryUser(id=0, position=(1.0, 1.0), available_spectrum_count=len(channels))]
    return SimState(channels, users, PrimaryUser(position=(0.0, 0.0)))


def _row(seed, blocking, policy="fls", rate=2.0):
    return MetricsRow(
        arrival_rate=rate,
        policy=policy,
        blocking_probability=blocking,
        mean_free_spectrum=2.0,
        mean_allocated_spectrum=1.0,
        interference_spread=5e6,
        system_efficiency=1.0 - blocking,
        channel_utilization=0.25,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# interference_spread
# ---------------------------------------------------------------------------


class TestInterferenceSpread:
    def test_three_occupied(self):
        state = _state([900, 905, 910, 915], occupied=[0, 1, 2])
        assert interference_spread(state) == pytest.approx(10e6)

    def test_single_occupied(self):
        assert interference_spread(_state([900, 905], occupied=[1])) == 0.0

    def test_none_occupied(self):
        assert interference_spread(_state([900, 905], occupied=[])) == 0.0

    def test_gap_counts(self):
        assert interference_spread(_state([900, 905, 910], occupied=[0, 2])) == pytest.approx(10e6)


# ---------------------------------------------------------------------------
# system_efficiency
# ---------------------------------------------------------------------------


class TestSystemEfficiency:
    def test_all_processed(self):
        assert system_efficiency(2.0, 2.0) == 1.0

    def test_nothing_processed(self):
        assert system_efficiency(0.0, 2.0) == 0.0

    def test_clamped_above(self):
        assert system_efficiency(2.5, 2.0) == 1.0

    def test_partial(self):
        assert system_efficiency(1.5, 2.0) == pytest.approx(0.75)

    def test_zero_offered_raises(self):
        with pytest.raises(ValueError):
            system_efficiency(1.0, 0.0)


# ---------------------------------------------------------------------------
# MetricsAccumulator / channel_utilization
# ---------------------------------------------------------------------------


class TestAccumulator:
    def test_no_calls(self):
        acc = MetricsAccumulator(4)
        acc.advance(10.0, free=4, allocated=0, primary=0, spread=0.0)
        assert channel_utilization(acc) == 0.0

    def test_one_of_four_busy(self):
        acc = MetricsAccumulator(4)
        acc.advance(10.0, free=3, allocated=1, primary=0, spread=0.0)
        assert channel_utilization(acc) == pytest.approx(0.25)

    def test_piecewise_trace(self):
        acc = MetricsAccumulator(2)
        acc.advance(5.0, free=0, allocated=2, primary=0, spread=5e6)
        acc.advance(10.0, free=2, allocated=0, primary=0, spread=0.0)
        assert channel_utilization(acc) == pytest.approx(0.5)
        assert acc.time_average(acc.spread_integral) == pytest.approx(2.5e6)

    def test_warmup_excluded(self):
        acc = MetricsAccumulator(1, warmup=5.0)
        acc.advance(5.0, free=0, allocated=1, primary=0, spread=0.0)
        acc.advance(10.0, free=1, allocated=0, primary=0, spread=0.0)
        assert acc.observed_time == pytest.approx(5.0)
        assert channel_utilization(acc) == 0.0
        assert acc.time_average(acc.free_integral) == pytest.approx(1.0)

    def test_interval_straddling_warmup(self):
        acc = MetricsAccumulator(1, warmup=2.0)
        acc.advance(4.0, free=0, allocated=1, primary=0, spread=0.0)
        assert acc.allocated_integral == pytest.approx(2.0)

    def test_time_cannot_go_backwards(self):
        acc = MetricsAccumulator(1)
        acc.advance(3.0, 1, 0, 0, 0.0)
        with pytest.raises(ValueError):
            acc.advance(2.0, 1, 0, 0, 0.0)

    def test_rates_without_calls(self):
        acc = MetricsAccumulator(1)
        assert acc.blocking_probability() == 0.0
        assert acc.dropping_probability() == 0.0
        assert acc.mean_wait() == 0.0

    def test_row_from_accumulator(self):
        acc = MetricsAccumulator(2)
        acc.granted, acc.blocked = 3, 1
        acc.advance(10.0, free=1, allocated=1, primary=0, spread=0.0)
        row = metrics_from_accumulator(acc, 2.0, "nsu", offered_erlang=2.0, seed=7)
        assert row.blocking_probability == pytest.approx(0.25)
        assert row.mean_allocated_spectrum == pytest.approx(1.0)
        assert row.system_efficiency == pytest.approx(0.5)
        assert row.channel_utilization == pytest.approx(0.5)
        assert row.seed == 7

    def test_row_counts_primary_spectrum(self):
        acc = MetricsAccumulator(4)
        acc.advance(5.0, free=1, allocated=1, primary=2, spread=0.0)
        acc.advance(10.0, free=2, allocated=1, primary=1, spread=0.0)
        row = metrics_from_accumulator(acc, 1.0, "fls", offered_erlang=1.0)
        assert row.mean_primary_spectrum == pytest.approx(1.5)
        total = row.mean_free_spectrum + row.mean_allocated_spectrum + row.mean_primary_spectrum
        assert total == pytest.approx(4.0)


# ---------------------------------------------------------------------------
# aggregate_rows
# ---------------------------------------------------------------------------


class TestAggregateRows:
    def test_mean_and_stderr(self):
        row = aggregate_rows([_row(1, 0.1), _row(2, 0.3)])
        assert row.blocking_probability == pytest.approx(0.2)
        assert row.system_efficiency == pytest.approx(0.8)
        # std (ddof=1) of {0.1, 0.3} is 0.1414..., divided by sqrt(2)
        assert row.blocking_stderr == pytest.approx(0.1)
        assert row.replications == 2
        assert row.seed is None

    def test_order_independent(self):
        rows = [_row(s, b) for s, b in [(1, 0.1), (2, 0.25), (3, 0.4)]]
        assert aggregate_rows(rows) == aggregate_rows(list(reversed(rows)))

    def test_single_row_has_zero_stderr(self):
        assert aggregate_rows([_row(1, 0.1)]).blocking_stderr == 0.0

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            aggregate_rows([])

    def test_mixed_points_raise(self):
        with pytest.raises(ValueError, match="mix"):
            aggregate_rows([_row(1, 0.1), _row(1, 0.1, policy="nsu")])
