"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations

# ---------------------------------------------------------------------------
# Custom exception hierarchy
# ---------------------------------------------------------------------------


class FuzzySpectrumError(Exception):
    """Base exception for all fuzzyspectrum errors."""


class ConfigError(FuzzySpectrumError, ValueError):
    """Raised when a configuration value breaks one of its invariants.

    Attributes:
        invariant: Short name of the violated invariant, or ``None``.
    """

    def __init__(self, message: str, invariant: str | None = None) -> None:
        super().__init__(message)
        self.invariant = invariant


class ConfigSyntaxError(ConfigError):
    """Raised when a config file cannot be parsed.

    Attributes:
        line: 1-based line of the offending token, or ``None``.
        column: 1-based column of the offending token, or ``None``.
    """

    def __init__(
        self, message: str, line: int | None = None, column: int | None = None
    ) -> None:
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}", invariant="syntax")
        self.line = line
        self.column = column


class RuleBaseError(ConfigError):
    """Raised for unknown labels, missing or duplicate rules."""


class InferenceError(FuzzySpectrumError):
    """Raised when an inference cannot produce a value (zero firing, empty input)."""


class SimulationError(FuzzySpectrumError):
    """Raised when a replication breaks a channel invariant."""


__all__ = [
    "FuzzySpectrumError",
    "ConfigError",
    "ConfigSyntaxError",
    "RuleBaseError",
    "InferenceError",
    "SimulationError",
]
