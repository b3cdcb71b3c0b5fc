"""Seeded verification suites with machine-readable reports."""

from .checks import KINDS, CheckReport, CheckSpec, run_check
from .mutations import MUTATIONS
from .rng import SplitMix64
from .suites import (
    SELECTORS,
    SuiteResult,
    commutator_specs,
    default_suite,
    dumps,
    loads_reports,
    run_suite,
    summarize,
    with_mutation,
)

__all__ = [
    "KINDS",
    "MUTATIONS",
    "SELECTORS",
    "CheckReport",
    "CheckSpec",
    "SplitMix64",
    "SuiteResult",
    "commutator_specs",
    "default_suite",
    "dumps",
    "loads_reports",
    "run_check",
    "run_suite",
    "summarize",
    "with_mutation",
]
