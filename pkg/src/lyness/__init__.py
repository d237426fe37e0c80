"""Exact arithmetic for the Lyness map and its invariant cubics."""

from lyness.exactnum import Rational, format_rational, normalize, parse_rational, sqrt_exact
from lyness.dynamics import PeriodReport, detect_period, invariant_h, step, step_back
from lyness.curve import (
    O,
    Q,
    LevelSet,
    LynessCurve,
    ProjectivePoint,
    classify_level_set,
)

__all__ = [
    "Rational",
    "format_rational",
    "normalize",
    "parse_rational",
    "sqrt_exact",
    "PeriodReport",
    "detect_period",
    "invariant_h",
    "step",
    "step_back",
    "O",
    "Q",
    "LevelSet",
    "LynessCurve",
    "ProjectivePoint",
    "classify_level_set",
]

__version__ = "0.1.0"
