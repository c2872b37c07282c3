"""Unit tests for fuzzyspectrum.radio.model."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzyspectrum.radio.model import (
    PathLossModel,
    PrimaryUser,
    SecondaryUser,
    angle_to,
    compute_descriptors,
    distance_from_snr,
    doppler_shift,
    euclidean_distance,
    max_doppler_shift,
    mobility_degree,
    normalize_distances,
    snr_from_distance,
    spectrum_efficiency,
)


class TestUsers:
    def test_negative_speed_rejected(self):
        with pytest.raises(ValueError, match="Speed"):
            SecondaryUser(id=0, position=(0, 0), speed=-1.0)

    def test_busy_above_available_rejected(self):
        with pytest.raises(ValueError, match="Busy"):
            SecondaryUser(id=0, position=(0, 0), busy_spectrum_count=3, available_spectrum_count=2)

    def test_primary_power_must_be_positive(self):
        with pytest.raises(ValueError):
            PrimaryUser(position=(0, 0), transmit_power=0.0)

    def test_path_loss_exponent_floor(self):
        with pytest.raises(ValueError):
            PathLossModel(exponent=0.5)


class TestDistance:
    def test_euclidean(self):
        su = SecondaryUser(id=0, position=(3.0, 4.0))
        assert euclidean_distance(su, PrimaryUser(position=(0.0, 0.0))) == pytest.approx(5.0)

    def test_normalize_max_maps_to_ten(self):
        assert normalize_distances([5.0, 10.0, 20.0]) == pytest.approx([2.5, 5.0, 10.0])

    def test_normalize_all_zero(self):
        assert normalize_distances([0.0, 0.0]) == [0.0, 0.0]

    def test_normalize_empty_raises(self):
        with pytest.raises(ValueError):
            normalize_distances([])

    @given(st.lists(st.floats(min_value=0.0, max_value=1e6), min_size=1, max_size=30))
    def test_normalized_range(self, distances):
        normalized = normalize_distances(distances)
        assert all(0.0 <= d <= 10.0 for d in normalized)
        if max(distances) > 0:
            assert max(normalized) == 10.0


class TestDoppler:
    def test_head_on(self):
        assert doppler_shift(30.0, 0.0, 9e8) == pytest.approx(90.0)

    def test_receding(self):
        assert doppler_shift(30.0, math.pi, 9e8) == pytest.approx(-90.0)

    def test_perpendicular(self):
        assert doppler_shift(30.0, math.pi / 2, 9e8) == pytest.approx(0.0, abs=1e-9)

    def test_speed_of_light_rejected(self):
        with pytest.raises(ValueError):
            doppler_shift(3e8, 0.0, 9e8)

    def test_negative_speed_rejected(self):
        with pytest.raises(ValueError):
            doppler_shift(-1.0, 0.0, 9e8)

    def test_max_shift(self):
        assert max_doppler_shift(30.0, 9e8) == pytest.approx(90.0)

    def test_angle_to_primary(self):
        su = SecondaryUser(id=0, position=(0.0, 0.0), heading=math.pi / 2)
        pu = PrimaryUser(position=(0.0, 10.0))
        assert angle_to(su, pu) == pytest.approx(0.0)

    @given(
        st.floats(min_value=0.0, max_value=100.0),
        st.floats(min_value=-2 * math.pi, max_value=2 * math.pi),
        st.floats(min_value=1e6, max_value=6e9),
    )
    def test_odd_about_perpendicular(self, speed, theta, f_c):
        # cos(pi - theta) == -cos(theta)
        assert doppler_shift(speed, theta, f_c) == pytest.approx(
            -doppler_shift(speed, math.pi - theta, f_c), abs=1e-9
        )


class TestMobilityDegree:
    def test_half_speed(self):
        assert mobility_degree(15.0, 30.0) == pytest.approx(5.0)

    def test_saturates(self):
        assert mobility_degree(60.0, 30.0) == 10.0

    def test_v_max_positive(self):
        with pytest.raises(ValueError):
            mobility_degree(1.0, 0.0)


class TestPathLoss:
    def test_snr_at_reference(self):
        pu = PrimaryUser(position=(0, 0), transmit_power=1.0)
        model = PathLossModel(reference_gain=1.0, exponent=2.0, noise_power=1e-9)
        # 1 W, 10 m: 1e-2 / 1e-9 = 1e7 -> 70 dB
        assert snr_from_distance(10.0, pu, model) == pytest.approx(70.0)

    @given(
        st.floats(min_value=0.1, max_value=1e4),
        st.floats(min_value=1.0, max_value=5.0),
    )
    def test_inverse_recovers_distance(self, distance, exponent):
        pu = PrimaryUser(position=(0, 0))
        model = PathLossModel(exponent=exponent)
        snr = snr_from_distance(distance, pu, model)
        assert distance_from_snr(snr, pu, model) == pytest.approx(distance, rel=1e-9)

    @given(
        st.floats(min_value=-50.0, max_value=100.0),
        st.floats(min_value=0.01, max_value=50.0),
        st.floats(min_value=1.0, max_value=6.0),
    )
    def test_distance_strictly_decreases_with_snr(self, snr, gap, exponent):
        pu = PrimaryUser(position=(0, 0))
        model = PathLossModel(exponent=exponent)
        assert distance_from_snr(snr, pu, model) > distance_from_snr(snr + gap, pu, model)

    def test_zero_distance_rejected(self):
        with pytest.raises(ValueError):
            snr_from_distance(0.0, PrimaryUser(position=(0, 0)), PathLossModel())


class TestSpectrumEfficiency:
    def test_ratio(self):
        assert spectrum_efficiency(3, 4) == pytest.approx(0.75)

    def test_nothing_available(self):
        with pytest.raises(ValueError):
            spectrum_efficiency(0, 0)

    def test_busy_out_of_range(self):
        with pytest.raises(ValueError):
            spectrum_efficiency(5, 4)


class TestComputeDescriptors:
    def test_population_normalization(self):
        pu = PrimaryUser(position=(0.0, 0.0))
        users = [
            SecondaryUser(id=0, position=(10.0, 0.0), speed=0.0),
            SecondaryUser(id=1, position=(40.0, 0.0), speed=30.0),
        ]
        d = compute_descriptors(users, pu, 30.0, [20.0, 150.0])
        assert d[0].distance == pytest.approx(2.5)
        assert d[1].distance == 10.0
        assert d[0].mobility == 0.0
        assert d[1].mobility == 10.0
        # utilization is clipped into [0, 100]
        assert d[1].utilization_efficiency == 100.0

    def test_misaligned_inputs(self):
        with pytest.raises(ValueError):
            compute_descriptors([SecondaryUser(id=0, position=(0, 0))], PrimaryUser(position=(1, 1)), 30.0, [])

    @given(
        st.lists(
            st.tuples(
                st.floats(min_value=-1e9, max_value=1e9),
                st.floats(min_value=-1e9, max_value=1e9),
                st.floats(min_value=0.0, max_value=1e6),
                st.floats(min_value=-1e6, max_value=1e6),
            ),
            min_size=1,
            max_size=25,
        ),
        st.tuples(
            st.floats(min_value=-1e9, max_value=1e9),
            st.floats(min_value=-1e9, max_value=1e9),
        ),
        st.floats(min_value=0.1, max_value=1e3),
    )
    def test_extreme_populations_stay_in_domain(self, rows, pu_position, v_max):
        users = [
            SecondaryUser(id=i, position=(x, y), speed=speed)
            for i, (x, y, speed, _) in enumerate(rows)
        ]
        descriptors = compute_descriptors(
            users, PrimaryUser(position=pu_position), v_max, [u for *_, u in rows]
        )
        for d in descriptors:
            assert 0.0 <= d.utilization_efficiency <= 100.0
            assert 0.0 <= d.mobility <= 10.0
            assert 0.0 <= d.distance <= 10.0
        assert max(d.distance for d in descriptors) in (0.0, 10.0)
