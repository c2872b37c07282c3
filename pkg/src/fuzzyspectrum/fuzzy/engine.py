"""Rule base, product/min firing, center-of-sets inference and user selection.

The engine maps a DescriptorVector (utilization efficiency, degree of
mobility, distance) to a possibility score; among contending secondary users
the one with the highest possibility gets the spectrum.

Typical usage::

    engine = FlsEngine.preset()
    engine.infer(DescriptorVector(100.0, 0.0, 10.0))   # 54.75
    select_user(engine, descriptors).index
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Literal, Mapping, NamedTuple, Sequence, Tuple

from fuzzyspectrum.errors import InferenceError, RuleBaseError
from fuzzyspectrum.fuzzy.defaults import (
    CONSEQUENCE_DOMAIN,
    PRESET_RULES,
    default_variables,
)
from fuzzyspectrum.fuzzy.membership import FuzzifiedInput, LinguisticVariable, fuzzify

logger = logging.getLogger(__name__)

TNorm = Literal["product", "min"]


@dataclass(frozen=True)
class FuzzyRule:
    """``IF x1 is A1 AND x2 is A2 AND x3 is A3 THEN possibility is c_avg``."""

    antecedents: Tuple[str, ...]
    consequent_centroid: float
    consequent_label: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedents", tuple(self.antecedents))
        lo, hi = CONSEQUENCE_DOMAIN
        if not lo <= self.consequent_centroid <= hi:
            raise RuleBaseError(
                f"rule {self.antecedents}: centroid {self.consequent_centroid} "
                f"outside [{lo:g}, {hi:g}]",
                invariant="centroid-in-domain",
            )


@dataclass(frozen=True)
class RuleBase:
    """Ordered rules; index ``l`` in the list is rule ``l + 1``."""

    rules: Tuple[FuzzyRule, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        seen = set()
        for rule in self.rules:
            if rule.antecedents in seen:
                raise RuleBaseError(
                    f"rulebase has duplicate rule {rule.antecedents}",
                    invariant="rulebase-unique",
                )
            seen.add(rule.antecedents)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def centroids(self) -> Tuple[float, ...]:
        return tuple(rule.consequent_centroid for rule in self.rules)

    def validate_against(
        self, variables: Sequence[LinguisticVariable], require_complete: bool = True
    ) -> None:
        """Check labels and arity against ``variables``.

        Raises:
            RuleBaseError: On arity mismatch, unknown labels, or (with
                ``require_complete``) a missing label combination.
        """
        for rule in self.rules:
            if len(rule.antecedents) != len(variables):
                raise RuleBaseError(
                    f"rule {rule.antecedents} has {len(rule.antecedents)} antecedents, "
                    f"expected {len(variables)}",
                    invariant="rule-arity",
                )
            for label, var in zip(rule.antecedents, variables):
                if label not in var.labels:
                    raise RuleBaseError(
                        f"unknown label {label!r} for {var.name} "
                        f"(expected one of {list(var.labels)})",
                        invariant="rule-labels",
                    )
        if require_complete:
            expected = math.prod(len(var.labels) for var in variables)
            if len(self.rules) != expected:
                raise RuleBaseError(
                    f"rulebase incomplete: {len(self.rules)} of {expected} rules",
                    invariant="rulebase-complete",
                )


def build_preset_rulebase() -> RuleBase:
    """The published 27 rules with their averaged consequent centroids."""
    return RuleBase(
        tuple(
            FuzzyRule(antecedents=labels, consequent_centroid=c, consequent_label=out)
            for labels, out, c in PRESET_RULES
        )
    )


def grid_rulebase(
    variables: Sequence[LinguisticVariable], centroids: Mapping[Tuple[str, ...], float]
) -> RuleBase:
    """Rules for the full label grid in variable order, centroids looked up by triple.

    Raises:
        RuleBaseError: If a label combination has no centroid.
    """
    rules = []
    for labels in itertools.product(*(var.labels for var in variables)):
        if labels not in centroids:
            raise RuleBaseError(
                f"rulebase incomplete: no rule for {labels}",
                invariant="rulebase-complete",
            )
        rules.append(FuzzyRule(antecedents=labels, consequent_centroid=centroids[labels]))
    return RuleBase(tuple(rules))


@dataclass(frozen=True)
class DescriptorVector:
    """Crisp inputs for one secondary user."""

    utilization_efficiency: float  # percent, [0, 100]
    mobility: float  # normalized, [0, 10]
    distance: float  # normalized, [0, 10]

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.utilization_efficiency, self.mobility, self.distance)


def firing_strength(
    rule: FuzzyRule, fuzzified: Sequence[FuzzifiedInput], t_norm: TNorm = "product"
) -> float:
    """T-norm of the rule's antecedent degrees (product by default)."""
    degrees = [inputs[label] for label, inputs in zip(rule.antecedents, fuzzified)]
    if t_norm == "min":
        return min(degrees)
    return math.prod(degrees)


def avg_centroid(
    label_counts: Mapping[str, float], level_centroids: Mapping[str, float]
) -> float:
    """Count-weighted average of consequence-level centroids.

    Raises:
        InferenceError: If every count is zero.
        KeyError: If a counted label has no centroid.
    """
    total = sum(label_counts.values())
    if total <= 0:
        raise InferenceError("average centroid undefined: all counts are zero")
    weighted = sum(w * level_centroids[label] for label, w in label_counts.items())
    return weighted / total


@dataclass(frozen=True)
class FlsEngine:
    """Three input variables plus a rule base; immutable and safe to share."""

    variables: Tuple[LinguisticVariable, ...]
    rulebase: RuleBase
    t_norm: TNorm = "product"

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(self.variables) != 3:
            raise RuleBaseError(
                f"engine needs exactly 3 input variables, got {len(self.variables)}",
                invariant="engine-arity",
            )
        if self.t_norm not in ("product", "min"):
            raise RuleBaseError(f"unknown t-norm {self.t_norm!r}", invariant="t-norm")
        self.rulebase.validate_against(self.variables, require_complete=False)

    @classmethod
    def preset(cls, t_norm: TNorm = "product") -> "FlsEngine":
        """Default partitions with the published rule base."""
        return cls(default_variables(), build_preset_rulebase(), t_norm)

    def fuzzify(self, d: DescriptorVector) -> Tuple[FuzzifiedInput, ...]:
        return tuple(fuzzify(var, x) for var, x in zip(self.variables, d.as_tuple()))

    def infer(self, d: DescriptorVector) -> float:
        return infer(self, d)


def infer(engine: FlsEngine, d: DescriptorVector) -> float:
    """Center-of-sets possibility for one descriptor vector.

    Raises:
        InferenceError: If a descriptor is not finite or no rule fires.
    """
    fuzzified = engine.fuzzify(d)
    numerator = 0.0
    denominator = 0.0
    for rule in engine.rulebase.rules:
        strength = firing_strength(rule, fuzzified, engine.t_norm)
        if strength > 0.0:
            numerator += strength * rule.consequent_centroid
            denominator += strength
    if denominator <= 0.0:
        raise InferenceError(f"no rule fired for {d}")
    return numerator / denominator


class Selection(NamedTuple):
    """Result of ranking contenders: winning index and every possibility."""

    index: int
    possibilities: Tuple[float, ...]


def select_user(engine: FlsEngine, descriptors: Sequence[DescriptorVector]) -> Selection:
    """Pick the highest-possibility user; ties go to the lowest index.

    Raises:
        InferenceError: If ``descriptors`` is empty.
    """
    if not descriptors:
        raise InferenceError("cannot select from an empty user list")
    possibilities = tuple(infer(engine, d) for d in descriptors)
    best = 0
    for i, value in enumerate(possibilities):
        if value > possibilities[best]:
            best = i
    logger.debug(
        "Selected user %d of %d (possibility %.4f)",
        best,
        len(possibilities),
        possibilities[best],
    )
    return Selection(best, possibilities)


__all__ = [
    "TNorm",
    "FuzzyRule",
    "RuleBase",
    "DescriptorVector",
    "FlsEngine",
    "Selection",
    "build_preset_rulebase",
    "grid_rulebase",
    "firing_strength",
    "avg_centroid",
    "infer",
    "select_user",
]
