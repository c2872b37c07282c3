"""Physical user state and the three antecedent descriptors derived from it.

Distances follow the Euclidean form and are normalized by the population
maximum, mobility is normalized speed, and utilization efficiency is the
busy/available spectrum ratio. The path-loss relation between SNR and
distance and the Doppler shift are provided for diagnostics and for
estimating distance from a measured SNR.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from fuzzyspectrum.fuzzy.engine import DescriptorVector

logger = logging.getLogger(__name__)

SPEED_OF_LIGHT = 3.0e8

# Antecedent domains the descriptors are scaled into
DISTANCE_SCALE = 10.0
MOBILITY_SCALE = 10.0
UTILIZATION_SCALE = 100.0


@dataclass
class SecondaryUser:
    """Unlicensed user; position in meters, speed in m/s, heading in radians."""

    id: int
    position: Tuple[float, float]
    speed: float = 0.0
    heading: float = 0.0
    busy_spectrum_count: int = 0
    available_spectrum_count: int = 0

    def __post_init__(self) -> None:
        """Validate speed and spectrum counts."""
        if self.speed < 0:
            raise ValueError("Speed must be non-negative")
        if not 0 <= self.busy_spectrum_count <= self.available_spectrum_count:
            raise ValueError("Busy spectrum count must be within [0, available]")


@dataclass(frozen=True)
class PrimaryUser:
    """Licensed user; transmit power in watts, carrier frequency in Hz."""

    position: Tuple[float, float]
    transmit_power: float = 1.0
    carrier_frequency: float = 9.0e8

    def __post_init__(self) -> None:
        """Validate power and frequency."""
        if self.transmit_power <= 0:
            raise ValueError("Transmit power must be positive")
        if self.carrier_frequency <= 0:
            raise ValueError("Carrier frequency must be positive")


@dataclass(frozen=True)
class PathLossModel:
    """Power-law gain ``g(R) = K * R**-alpha`` with thermal noise ``sigma^2``."""

    reference_gain: float = 1.0
    exponent: float = 2.0
    noise_power: float = 1.0e-9
    wave_speed: float = SPEED_OF_LIGHT

    def __post_init__(self) -> None:
        """Validate model parameters."""
        if self.exponent < 1:
            raise ValueError("Path-loss exponent must be >= 1")
        if self.reference_gain <= 0 or self.noise_power <= 0 or self.wave_speed <= 0:
            raise ValueError("Gain, noise power and wave speed must be positive")

    def gain(self, distance: float) -> float:
        return self.reference_gain * distance ** (-self.exponent)


def euclidean_distance(su: SecondaryUser, pu: PrimaryUser) -> float:
    """Straight-line distance in meters."""
    return math.hypot(su.position[0] - pu.position[0], su.position[1] - pu.position[1])


def normalize_distances(distances: Sequence[float]) -> List[float]:
    """Scale distances by the population maximum into [0, 10].

    The maximum maps to exactly 10; an all-zero population maps to zeros.

    Raises:
        ValueError: If ``distances`` is empty.
    """
    if not distances:
        raise ValueError("Cannot normalize an empty distance list")
    farthest = max(distances)
    if farthest <= 0:
        return [0.0 for _ in distances]
    return [
        DISTANCE_SCALE if d == farthest else min(DISTANCE_SCALE * d / farthest, DISTANCE_SCALE)
        for d in distances
    ]


def doppler_shift(
    speed: float,
    heading_angle: float,
    f_c: float,
    c: float = SPEED_OF_LIGHT,
) -> float:
    """Received-frequency offset ``v * cos(theta) / c * f_c`` in Hz.

    Negative when the user recedes.

    Raises:
        ValueError: If speed is negative or not below the wave speed.
    """
    if not 0 <= speed < c:
        raise ValueError(f"Speed must lie in [0, {c:g}) m/s, got {speed}")
    return speed * math.cos(heading_angle) / c * f_c


def max_doppler_shift(v_max: float, f_c: float, c: float = SPEED_OF_LIGHT) -> float:
    """Largest magnitude the shift can reach at ``v_max``."""
    return v_max * f_c / c


def mobility_degree(speed: float, v_max: float) -> float:
    """Speed normalized into [0, 10]; speeds beyond ``v_max`` saturate.

    Raises:
        ValueError: If ``v_max`` is not positive.
    """
    if v_max <= 0:
        raise ValueError("v_max must be positive")
    return min(MOBILITY_SCALE * min(max(speed, 0.0), v_max) / v_max, MOBILITY_SCALE)


def snr_from_distance(distance: float, pu: PrimaryUser, model: PathLossModel) -> float:
    """SNR in dB received at ``distance`` meters from the primary transmitter."""
    if distance <= 0:
        raise ValueError("Distance must be positive to compute an SNR")
    return 10.0 * math.log10(pu.transmit_power * model.gain(distance) / model.noise_power)


def distance_from_snr(snr_db: float, pu: PrimaryUser, model: PathLossModel) -> float:
    """Invert the path-loss SNR relation into meters."""
    radicand = (
        pu.transmit_power
        * model.reference_gain
        / (model.noise_power * 10.0 ** (snr_db / 10.0))
    )
    return radicand ** (1.0 / model.exponent)


def spectrum_efficiency(busy: int, available: int) -> float:
    """Busy over available spectrum, in [0, 1].

    Raises:
        ValueError: If nothing is available or ``busy`` is out of range.
    """
    if available <= 0:
        raise ValueError("Spectrum efficiency undefined with no available spectrum")
    if not 0 <= busy <= available:
        raise ValueError(f"Busy count {busy} outside [0, {available}]")
    return busy / available


def angle_to(su: SecondaryUser, pu: PrimaryUser) -> float:
    """Angle between the user's heading and the direction to the primary user."""
    bearing = math.atan2(pu.position[1] - su.position[1], pu.position[0] - su.position[0])
    return su.heading - bearing


def compute_descriptors(
    users: Sequence[SecondaryUser],
    pu: PrimaryUser,
    v_max: float,
    utilizations: Sequence[float],
) -> List[DescriptorVector]:
    """Descriptor vectors for a population, distances normalized across it.

    ``utilizations`` holds each user's efficiency in percent, aligned with
    ``users``.
    """
    if len(users) != len(utilizations):
        raise ValueError("users and utilizations must align")
    distances = normalize_distances([euclidean_distance(su, pu) for su in users])
    return [
        DescriptorVector(
            utilization_efficiency=min(max(u, 0.0), UTILIZATION_SCALE),
            mobility=mobility_degree(su.speed, v_max),
            distance=d,
        )
        for su, d, u in zip(users, distances, utilizations)
    ]


__all__ = [
    "SPEED_OF_LIGHT",
    "SecondaryUser",
    "PrimaryUser",
    "PathLossModel",
    "euclidean_distance",
    "normalize_distances",
    "doppler_shift",
    "max_doppler_shift",
    "mobility_degree",
    "snr_from_distance",
    "distance_from_snr",
    "spectrum_efficiency",
    "angle_to",
    "compute_descriptors",
]
