"""Dominating sets in combinatorial power-law graphs.

The package provides exact power-law degree sequences, a set-cover to
dominating-set embedding pipeline, exact and approximate dominating-set
solvers, and closed-form approximation bounds with their threshold
constants.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    AmbiguousGrowth,
    BudgetExceeded,
    DegreeZeroError,
    DivergentSeries,
    DivisibilityError,
    DomainError,
    InfeasibleEmbedding,
    InfeasibleScale,
    InternalInvariantViolation,
    NotDominating,
    ParityError,
    PlgdsError,
    RegimeViolation,
    ScaleError,
    SelfLoopError,
    WheelStall,
)

__all__ = [
    "AmbiguousGrowth",
    "BudgetExceeded",
    "DegreeZeroError",
    "DivergentSeries",
    "DivisibilityError",
    "DomainError",
    "InfeasibleEmbedding",
    "InfeasibleScale",
    "InternalInvariantViolation",
    "NotDominating",
    "ParityError",
    "PlgdsError",
    "RegimeViolation",
    "ScaleError",
    "SelfLoopError",
    "WheelStall",
    "__version__",
]
