# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Concrete exporters for every file format the tool writes.

Payloads are duck-typed so this module does not import the domain
packages; each exporter documents the attributes it reads.
"""

import json
import math
from typing import Any, List, Mapping

import pandas as pd

from .base import BaseExporter, Record
from .registry import ExporterRegistry


def json_safe(value: Any) -> Any:
    """Replace non-finite floats with None, recursively."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, Mapping):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    return value


class CsvExporter(BaseExporter):
    """Delimited text with a fixed column order."""

    file_extension = ".csv"
    separator = ","
    columns: List[str] = []

    def render(self, records: List[Record], metadata: Record) -> str:
        frame = pd.DataFrame.from_records(records, columns=self.columns)
        return frame.to_csv(index=False, sep=self.separator, lineterminator="\n")


class JsonExporter(BaseExporter):
    """A single JSON document, by default the first record."""

    file_extension = ".json"
    sort_keys = False

    def document(self, records: List[Record], metadata: Record) -> Any:
        return records[0]

    def render(self, records: List[Record], metadata: Record) -> str:
        document = json_safe(self.document(records, metadata))
        return json.dumps(document, indent=2, sort_keys=self.sort_keys) + "\n"


@ExporterRegistry.register
class TrajectoryCsvExporter(CsvExporter):
    """``point_id,frame,x,y`` rows; payload is a TrajectorySet."""

    format_name = "trajectory_csv"
    columns = ["point_id", "frame", "x", "y"]

    def collect_records(self, trajectory_set) -> List[Record]:
        records = []
        for trajectory in trajectory_set:
            frames = [int(round(t * trajectory.fps)) for t in trajectory.t.tolist()]
            for frame, x, y in zip(frames, trajectory.x.tolist(), trajectory.y.tolist()):
                records.append(
                    {"point_id": trajectory.point_id, "frame": frame, "x": x, "y": y}
                )
        return records


@ExporterRegistry.register
class TrajectorySidecarExporter(JsonExporter):
    """Sidecar metadata for a trajectory CSV; payload is a mapping."""

    format_name = "trajectory_sidecar"
    sort_keys = True

    def collect_records(self, payload: Mapping) -> List[Record]:
        return [dict(payload)]


@ExporterRegistry.register
class ConvergenceCsvExporter(CsvExporter):
    """One row per iteration; payload is a ConvergenceLog."""

    format_name = "convergence_csv"
    columns = ["iteration", "best_train_mse", "best_val_mse", "best_expr"]

    def collect_records(self, log) -> List[Record]:
        return [
            {
                "iteration": row.iteration,
                "best_train_mse": row.best_train_mse,
                "best_val_mse": row.best_val_mse,
                "best_expr": row.best_expr,
            }
            for row in log.rows
        ]


@ExporterRegistry.register
class FrontTsvExporter(CsvExporter):
    """Pareto front by complexity; payload is a ParetoFront."""

    format_name = "front_tsv"
    file_extension = ".tsv"
    separator = "\t"
    columns = ["complexity", "mse", "expression"]

    def collect_records(self, front) -> List[Record]:
        return [
            {
                "complexity": candidate.complexity,
                "mse": candidate.mse,
                "expression": str(candidate.expr),
            }
            for candidate in front.members()
        ]


@ExporterRegistry.register
class RetrievalTsvExporter(CsvExporter):
    """Ranked retrieval table; payload is a RetrievalResult."""

    format_name = "retrieval_tsv"
    file_extension = ".tsv"
    separator = "\t"
    columns = ["id", "distance", "expression"]

    def collect_records(self, result) -> List[Record]:
        return [
            {"id": item.entry_id, "distance": item.distance, "expression": item.expression}
            for item in result.ranking
        ]


@ExporterRegistry.register
class DiscoveryJsonExporter(JsonExporter):
    """Full discovery result; payload has ``to_dict()``."""

    format_name = "discovery_json"

    def collect_records(self, result) -> List[Record]:
        return [result.to_dict()]


@ExporterRegistry.register
class ForecastJsonExporter(JsonExporter):
    """Coordinate pairs plus metadata.

    The payload provides ``t``, ``x`` and ``y`` arrays and ``describe()``.
    """

    format_name = "forecast_json"

    def collect_records(self, forecast) -> List[Record]:
        return [
            {"t": t, "x": x, "y": y}
            for t, x, y in zip(forecast.t.tolist(), forecast.x.tolist(), forecast.y.tolist())
        ]

    def metadata(self, forecast) -> Record:
        return forecast.describe()

    def document(self, records: List[Record], metadata: Record) -> Any:
        return {
            "metadata": metadata,
            "t": [record["t"] for record in records],
            "points": [[record["x"], record["y"]] for record in records],
        }


@ExporterRegistry.register
class ForecastCsvExporter(CsvExporter):
    """``t,x,y`` rows; same payload as ``forecast_json``."""

    format_name = "forecast_csv"
    columns = ["t", "x", "y"]

    def collect_records(self, forecast) -> List[Record]:
        return ForecastJsonExporter().collect_records(forecast)


class DataFrameCsvExporter(CsvExporter):
    """Benchmark tables; payload is a pandas DataFrame holding ``columns``."""

    def collect_records(self, frame: pd.DataFrame) -> List[Record]:
        return frame.loc[:, self.columns].to_dict("records")


@ExporterRegistry.register
class BenchRunsCsvExporter(DataFrameCsvExporter):
    format_name = "bench_runs_csv"
    columns = [
        "system", "seed", "alpha", "point_id", "ted", "ted_commutative",
        "test_mse", "val_mse", "divergent", "expr_x", "expr_y", "error",
    ]


@ExporterRegistry.register
class BenchTableCsvExporter(DataFrameCsvExporter):
    format_name = "bench_table_csv"
    columns = [
        "system", "alpha", "runs", "ted_mean", "ted_std", "mse_mean", "mse_std", "failed",
    ]


@ExporterRegistry.register
class BenchCurvesCsvExporter(DataFrameCsvExporter):
    format_name = "bench_curves_csv"
    columns = ["alpha", "iteration", "train_mse_mean", "val_mse_mean"]
