"""Statistical acceptance runs for the simulator.

The tests validate:

* NSU on one channel without primaries matches the Erlang-B loss formula.
* Over the default sweep, FLS blocks no more than NSU and uses the band at
  least as well, with an occupied band no wider at every arrival rate.
* System efficiency tracks 1 - blocking when nothing is dropped.
* A long run with invariant checks after every event stays consistent.
* Sweep output is byte-identical across runs and worker counts.

Run them:
    pytest tests/integration/test_acceptance.py -v

Skip them (unit-only CI):
    pytest -m "not slow"
"""

import math

import pytest

from fuzzyspectrum.config import SimConfig
from fuzzyspectrum.output import render_metrics_csv, render_replications_csv
from fuzzyspectrum.simulation.runner import build_replication, run_sweep

pytestmark = pytest.mark.slow


def erlang_b(servers: int, load: float) -> float:
    """Erlang loss probability by the standard recursion."""
    b = 1.0
    for k in range(1, servers + 1):
        b = load * b / (k + load * b)
    return b


# ---------------------------------------------------------------------------
# Erlang-B oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("load", [0.5, 1.0, 2.0])
def test_single_channel_matches_erlang_b(load):
    config = SimConfig(
        num_secondary_users=5,
        num_channels=1,
        arrival_rates=(load,),
        mean_holding_time=1.0,
        primary_on_rate=0.0,
        sim_duration=200.0,
        replications=60,
    )
    point = run_sweep(config, policies=("nsu",))[0]
    row = point.nsu
    expected = erlang_b(1, load)

    assert row.replications == 60
    assert row.blocking_stderr > 0
    assert abs(row.blocking_probability - expected) <= 3 * row.blocking_stderr + 0.005
    assert row.dropping_probability == 0.0
    # carried traffic is a * (1 - B) for a pure loss system
    assert row.system_efficiency == pytest.approx(1.0 - row.blocking_probability, abs=0.03)


def test_multi_channel_matches_erlang_b():
    config = SimConfig(
        num_secondary_users=10,
        num_channels=4,
        arrival_rates=(3.0,),
        primary_on_rate=0.0,
        sim_duration=200.0,
        replications=40,
    )
    row = run_sweep(config, policies=("nsu",))[0].nsu
    expected = erlang_b(4, 3.0)
    assert abs(row.blocking_probability - expected) <= 3 * row.blocking_stderr + 0.005


# ---------------------------------------------------------------------------
# Policy comparison over the default sweep
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def default_sweep(engine):
    return run_sweep(SimConfig(replications=20), engine, workers=2)


def test_fls_blocks_no_more_than_nsu(default_sweep):
    for point in default_sweep:
        assert point.fls.blocking_probability <= point.nsu.blocking_probability + 1e-9, (
            point.arrival_rate
        )


def test_fls_utilizes_at_least_as_much(default_sweep):
    for point in default_sweep:
        assert point.fls.channel_utilization >= point.nsu.channel_utilization - 1e-9, (
            point.arrival_rate
        )


def test_fls_band_is_no_wider_than_nsu(default_sweep):
    for point in default_sweep:
        assert point.fls.interference_spread <= point.nsu.interference_spread + 1e-9, (
            point.arrival_rate
        )


def test_blocking_grows_with_load(default_sweep):
    nsu = [p.nsu.blocking_probability for p in default_sweep]
    assert nsu[-1] > nsu[0]
    assert all(0.0 <= b <= 1.0 for b in nsu)


def test_spectrum_conservation(default_sweep):
    # free + allocated + primary time averages add up to the channel count
    for point in default_sweep:
        for row in point.rows.values():
            total = row.mean_free_spectrum + row.mean_allocated_spectrum + row.mean_primary_spectrum
            assert total == pytest.approx(20.0)
            assert row.mean_primary_spectrum > 0.0


# ---------------------------------------------------------------------------
# Long runs
# ---------------------------------------------------------------------------


def test_long_run_keeps_invariants():
    config = SimConfig(sim_duration=5000.0, check_invariants=True)
    replication = build_replication(config, 10.0, "nsu", seed=99)
    row = replication.run()
    assert replication.state.events_processed >= 100_000
    assert 0.0 <= row.blocking_probability <= 1.0


def test_fls_run_keeps_invariants(engine):
    config = SimConfig(sim_duration=500.0, check_invariants=True)
    replication = build_replication(config, 12.0, "fls", seed=7, engine=engine)
    row = replication.run()
    assert replication.state.acc.handoffs > 0
    assert math.isfinite(row.mean_wait)


# ---------------------------------------------------------------------------
# Determinism
# ---------------------------------------------------------------------------


def test_sweep_output_is_byte_identical(engine):
    config = SimConfig(arrival_rates=(2.0, 6.0), replications=4, sim_duration=50.0)
    serial = run_sweep(config, engine, workers=1)
    parallel = run_sweep(config, engine, workers=3)
    assert render_metrics_csv(serial) == render_metrics_csv(parallel)
    assert render_replications_csv(serial) == render_replications_csv(parallel)
    assert render_metrics_csv(serial) == render_metrics_csv(run_sweep(config, engine))
