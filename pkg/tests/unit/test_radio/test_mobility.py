"""Unit tests for fuzzyspectrum.radio.mobility."""

import math

import numpy as np
import pytest

from fuzzyspectrum.radio.mobility import RandomWaypoint


def _walker(seed=0, speed=5.0):
    return RandomWaypoint(np.random.default_rng(seed), (100.0, 100.0), (50.0, 50.0), speed)


def test_stationary_user_never_moves():
    path = _walker(speed=0.0)
    assert path.position(0.0) == (50.0, 50.0)
    assert path.position(1000.0) == (50.0, 50.0)


def test_starts_at_start():
    assert _walker().position(0.0) == pytest.approx((50.0, 50.0))


def test_stays_inside_area():
    path = _walker(seed=3, speed=20.0)
    for t in np.linspace(0.0, 500.0, 2001):
        x, y = path.position(float(t))
        assert 0.0 <= x <= 100.0
        assert 0.0 <= y <= 100.0


def test_speed_is_respected():
    path = _walker(seed=4, speed=2.0)
    previous = path.position(0.0)
    for t in np.linspace(0.1, 50.0, 500):
        current = path.position(float(t))
        step = math.hypot(current[0] - previous[0], current[1] - previous[1])
        assert step <= 2.0 * 0.1 + 1e-9
        previous = current


def test_query_order_does_not_change_trajectory():
    dense, sparse = _walker(seed=7), _walker(seed=7)
    for t in np.linspace(0.0, 200.0, 401):
        dense.position(float(t))
    assert dense.position(200.0) == pytest.approx(sparse.position(200.0))


def test_earlier_query_after_later_is_ignored_for_advance():
    path = _walker(seed=2)
    late = path.position(30.0)
    path.advance(10.0)
    assert path.position(30.0) == late


def test_negative_speed_rejected():
    with pytest.raises(ValueError):
        _walker(speed=-1.0)
