"""Batch runs built on the evaluator: accuracy maps and reproduction checks."""
from .accuracy_map import (
    AccuracyMapPipeline,
    AccuracyMapResult,
    AccuracyMapSpec,
    AccuracyRow,
    GridAxis,
    run_accuracy_map,
)
from .reference_tables import ReferenceTables, published_tables
from .verification import (
    CHECK_NAMES,
    CheckResult,
    VerificationPipeline,
    VerificationReport,
    verify,
)

__all__ = [
    # Accuracy maps
    "AccuracyMapPipeline",
    "AccuracyMapResult",
    "AccuracyMapSpec",
    "AccuracyRow",
    "GridAxis",
    "run_accuracy_map",
    # Reference data
    "ReferenceTables",
    "published_tables",
    # Verification
    "CHECK_NAMES",
    "CheckResult",
    "VerificationPipeline",
    "VerificationReport",
    "verify",
]
