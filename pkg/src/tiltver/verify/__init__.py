"""Verification sweeps, report models and the sequential sweep runner."""

from .checks import (
    char_report,
    ext_check,
    levi_consistency,
    minimal_cx_analysis,
    ph2_region_check,
    tmc_check,
)
from .report import Verdict, emit_report, parse_report
from .runner import SweepRunner

__all__ = [
    "tmc_check",
    "levi_consistency",
    "minimal_cx_analysis",
    "ph2_region_check",
    "ext_check",
    "char_report",
    "Verdict",
    "emit_report",
    "parse_report",
    "SweepRunner",
]
