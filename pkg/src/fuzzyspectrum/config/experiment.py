"""Experiment configuration: YAML sections validated into frozen pydantic models.

A config file is a YAML mapping with up to four sections; every key inside a
section is optional and unknown keys are rejected::

    simulation:
      rng_seed: 7
      num_channels: 20
      arrival_rates: [1, 2, 3]
    radio:
      transmit_power_w: 1.0
    fuzzy:
      t_norm: product
      variables:
        mobility:
          domain: [0, 10]
          levels:
            Low: {breakpoints: [0, 0, 2, 5]}
            Moderate: {breakpoints: [2, 5, 8]}
            High: {breakpoints: [5, 8, 10, 10]}
    output:
      directory: results
      emit_plots: true

See docs/config-format.md for every key and its default.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from fuzzyspectrum.errors import ConfigError, ConfigSyntaxError, InferenceError, RuleBaseError
from fuzzyspectrum.fuzzy.defaults import (
    CONSEQUENCE_DOMAIN,
    CONSEQUENCE_LABELS,
    DEFAULT_CONSEQUENCE_CENTROIDS,
    DISTANCE,
    MOBILITY,
    UTILIZATION,
    VARIABLE_NAMES,
    default_variables,
)
from fuzzyspectrum.fuzzy.engine import (
    FlsEngine,
    FuzzyRule,
    RuleBase,
    avg_centroid,
    build_preset_rulebase,
    grid_rulebase,
)
from fuzzyspectrum.fuzzy.membership import LinguisticVariable, MembershipFunction
from fuzzyspectrum.radio.model import SPEED_OF_LIGHT, PathLossModel, PrimaryUser

logger = logging.getLogger(__name__)

VariableName = Literal["utilization", "mobility", "distance"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------


class SimConfig(_Section):
    """Experimental constants of one sweep."""

    rng_seed: int = 1
    num_secondary_users: int = Field(20, ge=1)
    area: Tuple[float, float] = (100.0, 100.0)
    num_channels: int = Field(20, ge=1)
    arrival_rates: Tuple[float, ...] = tuple(float(r) for r in range(1, 11))
    mean_holding_time: float = Field(1.0, gt=0)
    primary_on_rate: float = Field(0.1, ge=0)
    primary_off_rate: float = Field(0.3, ge=0)
    sim_duration: float = Field(100.0, gt=0)
    replications: int = Field(10, ge=1)
    warmup_fraction: float = Field(0.1, ge=0, lt=1)
    patience: Optional[float] = Field(None, ge=0)
    utilization_window: float = Field(100.0, gt=0)
    max_speed: float = Field(30.0, gt=0)
    base_frequency_hz: float = Field(9.0e8, gt=0)
    channel_spacing_hz: float = Field(5.0e6, gt=0)
    fls_repack: bool = True
    check_invariants: bool = False

    @field_validator("area")
    @classmethod
    def _area_positive(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        if value[0] <= 0 or value[1] <= 0:
            raise ValueError("area sides must be positive")
        return value

    @field_validator("arrival_rates")
    @classmethod
    def _rates_positive(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not value:
            raise ValueError("arrival_rates must not be empty")
        if any(rate <= 0 for rate in value):
            raise ValueError("arrival rates must be positive")
        return value

    @model_validator(mode="after")
    def _primary_process_defined(self) -> "SimConfig":
        if self.primary_on_rate == 0 and self.primary_off_rate == 0:
            raise ValueError("primary_on_rate and primary_off_rate cannot both be 0")
        return self

    @property
    def effective_patience(self) -> float:
        """FLS contention timeout; one mean holding time unless configured."""
        return self.mean_holding_time if self.patience is None else self.patience

    @property
    def warmup_time(self) -> float:
        return self.warmup_fraction * self.sim_duration

    @property
    def primary_on_probability(self) -> float:
        """Stationary probability that a channel's primary is transmitting."""
        return self.primary_on_rate / (self.primary_on_rate + self.primary_off_rate)

    def channel_frequency(self, index: int) -> float:
        return self.base_frequency_hz + index * self.channel_spacing_hz

    def offered_load(self, arrival_rate: float) -> float:
        """Offered traffic in Erlang."""
        return arrival_rate * self.mean_holding_time


# ---------------------------------------------------------------------------
# radio
# ---------------------------------------------------------------------------


class RadioConfig(_Section):
    """Primary transmitter and path-loss parameters."""

    transmit_power_w: float = Field(1.0, gt=0)
    carrier_frequency_hz: float = Field(9.0e8, gt=0)
    reference_gain: float = Field(1.0, gt=0)
    path_loss_exponent: float = Field(2.0, ge=1)
    noise_power_w: float = Field(1.0e-9, gt=0)
    wave_speed_mps: float = Field(SPEED_OF_LIGHT, gt=0)

    def primary_user(self, position: Tuple[float, float]) -> PrimaryUser:
        return PrimaryUser(
            position=position,
            transmit_power=self.transmit_power_w,
            carrier_frequency=self.carrier_frequency_hz,
        )

    def path_loss_model(self) -> PathLossModel:
        return PathLossModel(
            reference_gain=self.reference_gain,
            exponent=self.path_loss_exponent,
            noise_power=self.noise_power_w,
            wave_speed=self.wave_speed_mps,
        )


# ---------------------------------------------------------------------------
# fuzzy
# ---------------------------------------------------------------------------


class LevelSpec(_Section):
    """One labeled MF; the shape follows from the breakpoint count if omitted."""

    shape: Optional[Literal["triangle", "trapezoid"]] = None
    breakpoints: Tuple[float, ...]

    def to_mf(self) -> MembershipFunction:
        if self.shape is None:
            return MembershipFunction.from_breakpoints(self.breakpoints)
        return MembershipFunction(self.shape, self.breakpoints)

    @model_validator(mode="after")
    def _valid_mf(self) -> "LevelSpec":
        self.to_mf()
        return self


class VariableSpec(_Section):
    domain: Tuple[float, float]
    levels: Dict[str, LevelSpec]

    def to_variable(self, name: str) -> LinguisticVariable:
        return LinguisticVariable(
            name=name,
            domain=self.domain,
            levels=tuple((label, level.to_mf()) for label, level in self.levels.items()),
        )


class ConsequenceLevelSpec(_Section):
    """A consequence level given by a point centroid or by its MF."""

    centroid: Optional[float] = None
    shape: Optional[Literal["triangle", "trapezoid"]] = None
    breakpoints: Optional[Tuple[float, ...]] = None

    @model_validator(mode="after")
    def _one_definition(self) -> "ConsequenceLevelSpec":
        if (self.centroid is None) == (self.breakpoints is None):
            raise ValueError("give either a centroid or breakpoints for a consequence level")
        if self.breakpoints is not None:
            self.resolve()
        return self

    def resolve(self) -> float:
        if self.centroid is not None:
            return self.centroid
        level = LevelSpec(shape=self.shape, breakpoints=self.breakpoints or ())
        return level.to_mf().centroid(CONSEQUENCE_DOMAIN)


class RuleSpec(_Section):
    """A rule override: label triple plus a centroid or per-label response counts."""

    antecedents: Tuple[str, str, str]
    centroid: Optional[float] = None
    weights: Optional[Dict[str, float]] = None

    @model_validator(mode="after")
    def _one_consequent(self) -> "RuleSpec":
        if (self.centroid is None) == (self.weights is None):
            raise ValueError(f"rule {list(self.antecedents)}: give either centroid or weights")
        return self


class FuzzyConfig(_Section):
    t_norm: Literal["product", "min"] = "product"
    variables: Dict[VariableName, VariableSpec] = Field(default_factory=dict)
    consequence: Optional[Dict[str, ConsequenceLevelSpec]] = None
    rulebase: Optional[Tuple[RuleSpec, ...]] = None

    @model_validator(mode="after")
    def _engine_builds(self) -> "FuzzyConfig":
        self.build_engine()
        return self

    def input_variables(self) -> Tuple[LinguisticVariable, ...]:
        defaults = dict(zip(VARIABLE_NAMES, default_variables()))
        return tuple(
            self.variables[name].to_variable(name) if name in self.variables else defaults[name]
            for name in VARIABLE_NAMES
        )

    def consequence_centroids(self) -> Dict[str, float]:
        if self.consequence is None:
            return dict(DEFAULT_CONSEQUENCE_CENTROIDS)
        return {label: level.resolve() for label, level in self.consequence.items()}

    def build_rulebase(self, variables: Tuple[LinguisticVariable, ...]) -> RuleBase:
        if self.rulebase is None:
            rulebase = build_preset_rulebase()
            rulebase.validate_against(variables)
            return rulebase

        centroids = self.consequence_centroids()
        rules = []
        for spec in self.rulebase:
            if spec.weights is not None:
                unknown = sorted(set(spec.weights) - set(centroids))
                if unknown:
                    raise RuleBaseError(
                        f"rule {list(spec.antecedents)}: unknown consequence labels {unknown}",
                        invariant="rule-labels",
                    )
                try:
                    centroid = avg_centroid(spec.weights, centroids)
                except InferenceError as exc:
                    raise RuleBaseError(
                        f"rule {list(spec.antecedents)}: {exc}", invariant="rule-weights"
                    ) from exc
            else:
                centroid = spec.centroid
            rules.append(FuzzyRule(antecedents=spec.antecedents, consequent_centroid=centroid))
        rulebase = RuleBase(tuple(rules))
        rulebase.validate_against(variables)
        return grid_rulebase(variables, {r.antecedents: r.consequent_centroid for r in rulebase})

    def build_engine(self) -> FlsEngine:
        variables = self.input_variables()
        return FlsEngine(variables, self.build_rulebase(variables), self.t_norm)


# ---------------------------------------------------------------------------
# output + whole spec
# ---------------------------------------------------------------------------


class OutputConfig(_Section):
    directory: str = "results"
    emit_plots: bool = True


class ExperimentSpec(_Section):
    """Everything one ``run`` needs, validated before any replication starts."""

    simulation: SimConfig = Field(default_factory=SimConfig)
    radio: RadioConfig = Field(default_factory=RadioConfig)
    fuzzy: FuzzyConfig = Field(default_factory=FuzzyConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @property
    def output_directory(self) -> Path:
        return Path(self.output.directory)

    @property
    def emit_plots(self) -> bool:
        return self.output.emit_plots

    def build_engine(self) -> FlsEngine:
        return self.fuzzy.build_engine()


# ---------------------------------------------------------------------------
# parse / serialize
# ---------------------------------------------------------------------------


def _config_error(exc: ValidationError) -> ConfigError:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ()))
    cause = first.get("ctx", {}).get("error")
    invariant = getattr(cause, "invariant", None) or first.get("type")
    message = str(cause) if cause is not None else first.get("msg", str(exc))
    if location:
        message = f"{location}: {message}"
    return ConfigError(message, invariant=invariant)


def parse_config(text: str) -> ExperimentSpec:
    """Parse and validate config text.

    Raises:
        ConfigSyntaxError: If the YAML is malformed (1-based line/column).
        ConfigError: If a value breaks an invariant or a key is unknown.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ConfigSyntaxError(
            f"invalid config syntax: {exc.problem or exc}",
            line=mark.line + 1 if mark else None,
            column=mark.column + 1 if mark else None,
        ) from exc
    except yaml.YAMLError as exc:
        raise ConfigSyntaxError(f"invalid config syntax: {exc}") from exc

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigSyntaxError("config must be a mapping of sections", line=1, column=1)

    try:
        spec = ExperimentSpec.model_validate(data)
    except ValidationError as exc:
        raise _config_error(exc) from exc
    logger.debug("Parsed config with sections: %s", sorted(data))
    return spec


def load_config(path: Path | str | None) -> ExperimentSpec:
    """Read and parse a config file; ``None`` yields the all-defaults spec."""
    if path is None:
        return ExperimentSpec()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}", invariant="readable") from exc
    spec = parse_config(text)
    logger.info("Loaded config from %s", path)
    return spec


def serialize_config(spec: ExperimentSpec) -> str:
    """Dump a spec as config text that parses back to an equal spec."""
    data: Dict[str, Any] = spec.model_dump(mode="json", exclude_none=True)
    return yaml.safe_dump(data, sort_keys=False)


def with_overrides(spec: ExperimentSpec, **simulation: Any) -> ExperimentSpec:
    """Copy of ``spec`` with validated simulation overrides (e.g. ``rng_seed``)."""
    merged = spec.simulation.model_dump()
    merged.update({k: v for k, v in simulation.items() if v is not None})
    try:
        sim = SimConfig.model_validate(merged)
    except ValidationError as exc:
        raise _config_error(exc) from exc
    return spec.model_copy(update={"simulation": sim})


__all__ = [
    "SimConfig",
    "RadioConfig",
    "LevelSpec",
    "VariableSpec",
    "ConsequenceLevelSpec",
    "RuleSpec",
    "FuzzyConfig",
    "OutputConfig",
    "ExperimentSpec",
    "parse_config",
    "load_config",
    "serialize_config",
    "with_overrides",
    "UTILIZATION",
    "MOBILITY",
    "DISTANCE",
    "CONSEQUENCE_LABELS",
]
