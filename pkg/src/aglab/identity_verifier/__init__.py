"""Executable checks of the entropy identities, run singly or as a suite."""

from .identities import (
    EXACT_FLOOR,
    ORDER_THRESHOLD,
    HilbertDemo,
    OrderStudy,
    SmoothCase,
    default_cases,
    hilbert_example,
    hilbert_reference_at_zero,
    hilbert_unboundedness_demo,
    hilbert_value_at_zero,
    observed_orders,
    order_study,
    verify_cutoff_identity,
    verify_div_decomposition,
    verify_harmonic_entropy_identity,
    verify_jin_kohn_divergence,
    verify_multiplier_on_modes,
)
from .suite import SuiteReport, SuiteRow, parse_suite_csv, rows_per_grid, run_suite, suite_families

__all__ = [
    "EXACT_FLOOR",
    "ORDER_THRESHOLD",
    "HilbertDemo",
    "OrderStudy",
    "SmoothCase",
    "SuiteReport",
    "SuiteRow",
    "default_cases",
    "hilbert_example",
    "hilbert_reference_at_zero",
    "hilbert_unboundedness_demo",
    "hilbert_value_at_zero",
    "observed_orders",
    "order_study",
    "parse_suite_csv",
    "rows_per_grid",
    "run_suite",
    "suite_families",
    "verify_cutoff_identity",
    "verify_div_decomposition",
    "verify_harmonic_entropy_identity",
    "verify_jin_kohn_divergence",
    "verify_multiplier_on_modes",
]
