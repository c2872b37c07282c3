"""Fuzzy logic system: membership functions, rule base and inference."""

from fuzzyspectrum.fuzzy.defaults import (
    CONSEQUENCE_LABELS,
    DEFAULT_CONSEQUENCE_CENTROIDS,
    VARIABLE_NAMES,
    default_variables,
)
from fuzzyspectrum.fuzzy.engine import (
    DescriptorVector,
    FlsEngine,
    FuzzyRule,
    RuleBase,
    Selection,
    avg_centroid,
    build_preset_rulebase,
    firing_strength,
    grid_rulebase,
    infer,
    select_user,
)
from fuzzyspectrum.fuzzy.membership import (
    FuzzifiedInput,
    LinguisticVariable,
    MembershipFunction,
    centroid_defuzzify,
    eval_mf,
    fuzzify,
    trapezoid,
    triangle,
)

__all__ = [
    "CONSEQUENCE_LABELS",
    "DEFAULT_CONSEQUENCE_CENTROIDS",
    "VARIABLE_NAMES",
    "default_variables",
    "DescriptorVector",
    "FlsEngine",
    "FuzzyRule",
    "RuleBase",
    "Selection",
    "avg_centroid",
    "build_preset_rulebase",
    "firing_strength",
    "grid_rulebase",
    "infer",
    "select_user",
    "FuzzifiedInput",
    "LinguisticVariable",
    "MembershipFunction",
    "centroid_defuzzify",
    "eval_mf",
    "fuzzify",
    "trapezoid",
    "triangle",
]
