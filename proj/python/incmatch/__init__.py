"""Directed subgraph matching with constraint-inclusion reduction."""

from ._core import (
    CapacityError,
    DataGraph,
    ParseError,
    Pattern,
    PlanError,
    UsageError,
    match,
    oracle_count,
    plan,
)

__all__ = [
    "CapacityError",
    "DataGraph",
    "ParseError",
    "Pattern",
    "PlanError",
    "UsageError",
    "match",
    "oracle_count",
    "plan",
]
__version__ = "0.1.0"
