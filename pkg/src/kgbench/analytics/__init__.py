"""Result analytics: aggregation, compass plots, preference tests, tables."""

from .aggregate import (
    DEFAULT_DIMENSIONS,
    AnalyticsError,
    DimensionAggregate,
    DimensionSpec,
    EmptyResultError,
    aggregate_dimensions,
)
from .compass import render_compass, vertex
from .stats import (
    InsufficientSamplesError,
    PreferenceResult,
    WelchResult,
    format_preference_test,
    preference_verdict,
    student_t_tail,
    welch_t_test,
)
from .tables import export_preferences, export_summary, preference_table, summary_table

__all__ = [
    "AnalyticsError",
    "DEFAULT_DIMENSIONS",
    "DimensionAggregate",
    "DimensionSpec",
    "EmptyResultError",
    "InsufficientSamplesError",
    "PreferenceResult",
    "WelchResult",
    "aggregate_dimensions",
    "export_preferences",
    "export_summary",
    "format_preference_test",
    "preference_table",
    "preference_verdict",
    "render_compass",
    "student_t_tail",
    "summary_table",
    "vertex",
    "welch_t_test",
]
