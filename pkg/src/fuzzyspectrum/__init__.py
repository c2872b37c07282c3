"""
fuzzyspectrum - Fuzzy-logic spectrum allocation for cognitive radio networks.

A three-input fuzzy logic system scores secondary users by utilization
efficiency, mobility and distance to the primary user, and a discrete-event
simulator compares FLS-ranked admission against a first-come-first-served
baseline over an arrival-rate sweep.

Quick Start:
    >>> from fuzzyspectrum import DescriptorVector, FlsEngine
    >>> engine = FlsEngine.preset()
    >>> engine.infer(DescriptorVector(0.0, 0.0, 0.0))
    28.59

For experiments, see ``fuzzyspectrum.simulation.run_sweep`` or the
``fuzzyspectrum`` command.
"""

from fuzzyspectrum.config import ExperimentSpec, Settings, SimConfig, get_settings, load_config
from fuzzyspectrum.fuzzy import DescriptorVector, FlsEngine, infer, select_user
from fuzzyspectrum.simulation import MetricsRow, run_replication, run_sweep

__version__ = "0.1.0"
__all__ = [
    "DescriptorVector",
    "ExperimentSpec",
    "FlsEngine",
    "MetricsRow",
    "Settings",
    "SimConfig",
    "get_settings",
    "infer",
    "load_config",
    "run_replication",
    "run_sweep",
    "select_user",
]
