"""Membership functions, linguistic variables and singleton fuzzification."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Literal, Sequence, Tuple

import numpy as np
import skfuzzy as fuzz

from fuzzyspectrum.errors import ConfigError, InferenceError

logger = logging.getLogger(__name__)

Shape = Literal["triangle", "trapezoid"]

# label -> degree, in the owning variable's level order
FuzzifiedInput = Dict[str, float]

_ARITY = {"triangle": 3, "trapezoid": 4}


@dataclass(frozen=True)
class MembershipFunction:
    """Triangle ``(a, b, c)`` or trapezoid ``(a, b, c, d)`` over a scalar domain.

    Zero-width edges (``a == b`` or ``c == d``) are legal and evaluate to the
    plateau value at the shared point, which is how shouldered partitions
    such as ``trapezoid(0, 0, 25, 50)`` reach 1 at the domain edge.
    """

    shape: Shape
    breakpoints: Tuple[float, ...]

    def __post_init__(self) -> None:
        """Validate shape arity and breakpoint ordering."""
        if self.shape not in _ARITY:
            raise ConfigError(
                f"Unknown membership shape {self.shape!r} "
                f"(expected one of {sorted(_ARITY)})",
                invariant="mf-shape",
            )
        points = tuple(float(p) for p in self.breakpoints)
        if len(points) != _ARITY[self.shape]:
            raise ConfigError(
                f"A {self.shape} needs {_ARITY[self.shape]} breakpoints, "
                f"got {len(points)}",
                invariant="mf-arity",
            )
        if not all(np.isfinite(points)):
            raise ConfigError("breakpoints must be finite", invariant="mf-finite")
        if any(lo > hi for lo, hi in zip(points, points[1:])):
            raise ConfigError(
                f"breakpoints not ordered: {points}", invariant="breakpoints-ordered"
            )
        object.__setattr__(self, "breakpoints", points)

    @classmethod
    def from_breakpoints(cls, breakpoints: Sequence[float]) -> "MembershipFunction":
        """Infer the shape from the number of breakpoints (3 or 4)."""
        shape: Shape = "triangle" if len(breakpoints) == 3 else "trapezoid"
        return cls(shape, tuple(breakpoints))

    @property
    def corners(self) -> Tuple[float, float, float, float]:
        """Breakpoints as ``(a, b, c, d)``; a triangle has ``b == c``."""
        if self.shape == "triangle":
            a, b, c = self.breakpoints
            return a, b, b, c
        a, b, c, d = self.breakpoints
        return a, b, c, d

    @property
    def support(self) -> Tuple[float, float]:
        a, _, _, d = self.corners
        return a, d

    def __call__(self, x: float) -> float:
        return eval_mf(self, x)

    def sample(self, universe: np.ndarray) -> np.ndarray:
        """Evaluate over a discretized universe with scikit-fuzzy."""
        if self.shape == "triangle":
            return fuzz.trimf(universe, list(self.breakpoints))
        return fuzz.trapmf(universe, list(self.breakpoints))

    def centroid(self, domain: Tuple[float, float], resolution: int = 1001) -> float:
        """Centroid of the set sampled on ``resolution`` points of ``domain``."""
        universe = np.linspace(domain[0], domain[1], resolution)
        return centroid_defuzzify(universe, self.sample(universe))


def triangle(a: float, b: float, c: float) -> MembershipFunction:
    return MembershipFunction("triangle", (a, b, c))


def trapezoid(a: float, b: float, c: float, d: float) -> MembershipFunction:
    return MembershipFunction("trapezoid", (a, b, c, d))


def eval_mf(mf: MembershipFunction, x: float) -> float:
    """Piecewise-linear degree of ``x`` in ``mf``, always within [0, 1]."""
    a, b, c, d = mf.corners
    if x < a or x > d:
        return 0.0
    if b <= x <= c:
        return 1.0
    if x < b:
        return (x - a) / (b - a)
    return (d - x) / (d - c)


@dataclass(frozen=True)
class LinguisticVariable:
    """Named crisp input with domain bounds and ordered labeled levels."""

    name: str
    domain: Tuple[float, float]
    levels: Tuple[Tuple[str, MembershipFunction], ...]

    def __post_init__(self) -> None:
        """Validate labels, domain bounds and coverage."""
        lo, hi = (float(v) for v in self.domain)
        object.__setattr__(self, "domain", (lo, hi))
        object.__setattr__(self, "levels", tuple((str(k), mf) for k, mf in self.levels))

        if not lo < hi:
            raise ConfigError(
                f"{self.name}: domain lower bound must be below upper bound",
                invariant="domain-ordered",
            )
        if not self.levels:
            raise ConfigError(f"{self.name}: no levels defined", invariant="levels")

        labels = self.labels
        if len(set(labels)) != len(labels):
            raise ConfigError(
                f"{self.name}: duplicate labels in {labels}", invariant="labels-unique"
            )

        for label, mf in self.levels:
            if any(p < lo or p > hi for p in mf.breakpoints):
                raise ConfigError(
                    f"{self.name}.{label}: breakpoints {mf.breakpoints} "
                    f"outside domain [{lo}, {hi}]",
                    invariant="breakpoints-in-domain",
                )

        gap = self._first_uncovered_point()
        if gap is not None:
            raise ConfigError(
                f"{self.name}: no level covers x={gap:g}", invariant="coverage"
            )

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(label for label, _ in self.levels)

    def mf(self, label: str) -> MembershipFunction:
        for name, mf in self.levels:
            if name == label:
                return mf
        raise KeyError(f"{self.name} has no level {label!r}")

    def clamp(self, x: float) -> float:
        lo, hi = self.domain
        return min(max(x, lo), hi)

    def _first_uncovered_point(self) -> float | None:
        # Zeros of a max of piecewise-linear MFs start and end on breakpoints,
        # so breakpoints and the midpoints between them are enough to probe.
        lo, hi = self.domain
        critical = sorted(
            {lo, hi, *(p for _, mf in self.levels for p in mf.breakpoints)}
        )
        probes = list(critical)
        probes += [(x + y) / 2.0 for x, y in zip(critical, critical[1:])]
        for x in sorted(probes):
            if max(eval_mf(mf, x) for _, mf in self.levels) <= 0.0:
                return x
        return None


def fuzzify(var: LinguisticVariable, x: float) -> FuzzifiedInput:
    """Singleton fuzzification of ``x`` after clamping it into the domain.

    Raises:
        InferenceError: If ``x`` is NaN or infinite.
    """
    if not math.isfinite(x):
        raise InferenceError(f"{var.name}={x} is not a finite number")
    clamped = var.clamp(x)
    if clamped != x:
        lo, hi = var.domain
        # rounding noise at the edges is expected; anything larger is worth a note
        if abs(clamped - x) > 1e-6 * max(1.0, hi - lo):
            logger.warning("%s=%g outside [%g, %g], clamped", var.name, x, lo, hi)
    return {label: eval_mf(mf, clamped) for label, mf in var.levels}


def centroid_defuzzify(universe: Iterable[float], degrees: Iterable[float]) -> float:
    """Centroid of a sampled fuzzy set.

    scikit-fuzzy integrates the piecewise-linear set between samples, which
    is the continuous form of ``sum(x * mu(x)) / sum(mu(x))``.

    Raises:
        InferenceError: If every degree is zero.
    """
    xs = np.asarray(list(universe), dtype=float)
    mu = np.asarray(list(degrees), dtype=float)
    if xs.shape != mu.shape:
        raise ValueError("universe and degrees must have the same length")
    if not np.any(mu > 0.0):
        raise InferenceError("centroid of an empty fuzzy set is undefined")
    return float(fuzz.defuzz(xs, mu, "centroid"))


__all__ = [
    "FuzzifiedInput",
    "MembershipFunction",
    "LinguisticVariable",
    "triangle",
    "trapezoid",
    "eval_mf",
    "fuzzify",
    "centroid_defuzzify",
]
