"""Radio model: user geometry, path loss, Doppler and descriptor computation."""

from fuzzyspectrum.radio.mobility import RandomWaypoint
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

__all__ = [
    "RandomWaypoint",
    "PathLossModel",
    "PrimaryUser",
    "SecondaryUser",
    "angle_to",
    "compute_descriptors",
    "distance_from_snr",
    "doppler_shift",
    "euclidean_distance",
    "max_doppler_shift",
    "mobility_degree",
    "normalize_distances",
    "snr_from_distance",
    "spectrum_efficiency",
]
