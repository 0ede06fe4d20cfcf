# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""End-to-end discovery, forecasting, export and benchmarking."""

from .benchmark import (
    BENCHMARK_PROFILES,
    BenchmarkCell,
    BenchmarkReport,
    BenchmarkSuite,
    aggregate_table,
    mean_curves,
    run_benchmark,
    run_cell,
    runs_frame,
    system_val_mse_at,
    ted_by_alpha,
    val_mse_at,
)
from .discovery import (
    RESULT_FORMAT_VERSION,
    AxisDiscovery,
    DiscoveryResult,
    ExportError,
    ForecastError,
    PipelineConfig,
    PipelineError,
    SetDiscovery,
    combined_test_mse,
    discover,
    discover_axis,
    discover_set,
    ground_truth_from_sidecar,
)
from .forecast import (
    DEFAULT_POINTS_PER_SECOND,
    EXPORT_FORMATS,
    Forecast,
    export_trajectory,
    forecast,
    resample,
    resample_count,
)

__all__ = [
    "BENCHMARK_PROFILES",
    "BenchmarkCell",
    "BenchmarkReport",
    "BenchmarkSuite",
    "aggregate_table",
    "mean_curves",
    "run_benchmark",
    "run_cell",
    "runs_frame",
    "system_val_mse_at",
    "ted_by_alpha",
    "val_mse_at",
    "RESULT_FORMAT_VERSION",
    "AxisDiscovery",
    "DiscoveryResult",
    "ExportError",
    "ForecastError",
    "PipelineConfig",
    "PipelineError",
    "SetDiscovery",
    "combined_test_mse",
    "discover",
    "discover_axis",
    "discover_set",
    "ground_truth_from_sidecar",
    "DEFAULT_POINTS_PER_SECOND",
    "EXPORT_FORMATS",
    "Forecast",
    "export_trajectory",
    "forecast",
    "resample",
    "resample_count",
]
