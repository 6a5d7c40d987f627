"""Tilting characters: ingested tables, base cases and the sandwich pinch."""

from .base import TiltingStrategy
from .conjecture import (
    CheckOutcome,
    PinchResult,
    TiltingResolution,
    TiltingResolver,
    b_coefficients,
    sandwich_pinch,
    tilting_char,
    tmc_necessary_checks,
)
from .registry import StrategyRegistry
from .table import TiltingTable, load_tilting_table

__all__ = [
    "TiltingStrategy",
    "StrategyRegistry",
    "TiltingTable",
    "load_tilting_table",
    "TiltingResolution",
    "TiltingResolver",
    "tilting_char",
    "sandwich_pinch",
    "PinchResult",
    "b_coefficients",
    "tmc_necessary_checks",
    "CheckOutcome",
]
