"""Default partitions and the published 27-rule preset.

The breakpoints are not published, so the defaults are symmetric shouldered
partitions: trapezoids on the outer levels, a triangle in the middle, and
every grid corner {lo, mid, hi} fires exactly one level with degree 1.
"""

from __future__ import annotations

from typing import Dict, Tuple

from fuzzyspectrum.fuzzy.membership import LinguisticVariable, trapezoid, triangle

UTILIZATION = "utilization"
MOBILITY = "mobility"
DISTANCE = "distance"

VARIABLE_NAMES: Tuple[str, str, str] = (UTILIZATION, MOBILITY, DISTANCE)

UTILIZATION_LABELS = ("Low", "Moderate", "High")
MOBILITY_LABELS = ("Low", "Moderate", "High")
DISTANCE_LABELS = ("Near", "Moderate", "Far")

CONSEQUENCE_LABELS = ("Very Low", "Low", "Medium", "High", "Very High")
CONSEQUENCE_DOMAIN = (0.0, 100.0)
# evenly spaced; only used when a custom rulebase derives centroids from counts
DEFAULT_CONSEQUENCE_CENTROIDS: Dict[str, float] = {
    "Very Low": 10.0,
    "Low": 30.0,
    "Medium": 50.0,
    "High": 70.0,
    "Very High": 90.0,
}

# (antecedent labels, consequent label, averaged consequent centroid), rule 1..27
PRESET_RULES: Tuple[Tuple[Tuple[str, str, str], str, float], ...] = (
    (("Low", "Low", "Near"), "Very Low", 28.59),
    (("Low", "Low", "Moderate"), "Low", 25.90),
    (("Low", "Low", "Far"), "Low", 24.23),
    (("Low", "Moderate", "Near"), "Very Low", 22.43),
    (("Low", "Moderate", "Moderate"), "Low", 22.98),
    (("Low", "Moderate", "Far"), "Medium", 24.68),
    (("Low", "High", "Near"), "Very Low", 16.95),
    (("Low", "High", "Moderate"), "Low", 19.70),
    (("Low", "High", "Far"), "Medium", 22.06),
    (("Moderate", "Low", "Near"), "Very Low", 43.08),
    (("Moderate", "Low", "Moderate"), "Medium", 40.20),
    (("Moderate", "Low", "Far"), "High", 38.98),
    (("Moderate", "Moderate", "Near"), "Very Low", 40.89),
    (("Moderate", "Moderate", "Moderate"), "Medium", 38.47),
    (("Moderate", "Moderate", "Far"), "High", 39.16),
    (("Moderate", "High", "Near"), "Very Low", 36.50),
    (("Moderate", "High", "Moderate"), "Low", 34.15),
    (("Moderate", "High", "Far"), "High", 40.26),
    (("High", "Low", "Near"), "Low", 58.62),
    (("High", "Low", "Moderate"), "High", 55.12),
    (("High", "Low", "Far"), "Very High", 54.75),
    (("High", "Moderate", "Near"), "Low", 56.99),
    (("High", "Moderate", "Moderate"), "High", 53.81),
    (("High", "Moderate", "Far"), "Very High", 53.92),
    (("High", "High", "Near"), "Very Low", 54.05),
    (("High", "High", "Moderate"), "High", 53.72),
    (("High", "High", "Far"), "High", 52.12),
)


def _three_level(
    name: str, hi: float, labels: Tuple[str, str, str]
) -> LinguisticVariable:
    q = hi / 4.0
    low, moderate, high = labels
    return LinguisticVariable(
        name=name,
        domain=(0.0, hi),
        levels=(
            (low, trapezoid(0.0, 0.0, q, 2 * q)),
            (moderate, triangle(q, 2 * q, 3 * q)),
            (high, trapezoid(2 * q, 3 * q, hi, hi)),
        ),
    )


def default_utilization_variable() -> LinguisticVariable:
    """Spectrum utilization efficiency in percent, domain [0, 100]."""
    return _three_level(UTILIZATION, 100.0, UTILIZATION_LABELS)


def default_mobility_variable() -> LinguisticVariable:
    """Normalized degree of mobility, domain [0, 10]."""
    return _three_level(MOBILITY, 10.0, MOBILITY_LABELS)


def default_distance_variable() -> LinguisticVariable:
    """Normalized distance to the primary user, domain [0, 10]."""
    return _three_level(DISTANCE, 10.0, DISTANCE_LABELS)


def default_variables() -> Tuple[LinguisticVariable, LinguisticVariable, LinguisticVariable]:
    return (
        default_utilization_variable(),
        default_mobility_variable(),
        default_distance_variable(),
    )
