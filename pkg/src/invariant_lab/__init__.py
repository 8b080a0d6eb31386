"""Primality scans built on idempotents and square/triangular remainder collisions."""

from .arith import Modulus
from .factors import FactorHint, factor_hint
from .oracle import CountReport, count_report, trial_division_is_prime, unit_root_check
from .scans import (
    Algorithm,
    ScanConfig,
    ScanOutcome,
    Verdict,
    invariant_scan,
    quadratic_scan,
    run_scan,
    scan_segment,
    triangular_scan,
)

__version__ = "0.1.0"

__all__ = [
    "Algorithm",
    "CountReport",
    "FactorHint",
    "Modulus",
    "ScanConfig",
    "ScanOutcome",
    "Verdict",
    "count_report",
    "factor_hint",
    "invariant_scan",
    "quadratic_scan",
    "run_scan",
    "scan_segment",
    "triangular_scan",
    "trial_division_is_prime",
    "unit_root_check",
]
