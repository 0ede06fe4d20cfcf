# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Resample and rescale a forecast into downstream trajectory files.

Usage:
    resr export --forecast runs/forecast_p0.json --pps 2
    resr export --forecast runs/forecast_p0.json --target-resolution 320x240 --format csv
"""

import json
from typing import Any, Dict

from ..pipeline import ExportError, Forecast, PipelineError, export_trajectory
from .base import EXIT_OK, EXIT_USAGE, BaseCommand, CommandError, parse_resolution

EXTENSIONS = {"json": ".json", "csv": ".csv"}


class ExportCommand(BaseCommand):
    """Write ``[x, y]`` coordinate sequences for a forecast."""

    name = "export"
    help = "Export a forecast as a resampled coordinate sequence"

    def add_arguments(self, parser):
        parser.add_argument("--forecast", required=True, help="forecast_p<ID>.json from forecast")
        parser.add_argument("--format", choices=sorted(EXTENSIONS), default="json", help="Output format")
        parser.add_argument("--source-resolution", type=parse_resolution, help="WxH of the forecast coordinates")
        parser.add_argument("--target-resolution", type=parse_resolution, help="WxH to rescale to")
        parser.add_argument("--pps", type=float, help="Points per second")

    def config_overrides(self, options) -> Dict[str, Any]:
        return {
            "pipeline.points_per_second": options.pps,
            "pipeline.source_resolution": list(options.source_resolution) if options.source_resolution else None,
            "pipeline.target_resolution": list(options.target_resolution) if options.target_resolution else None,
        }

    def handle(self, options, settings) -> int:
        pipeline = settings["pipeline"]
        self.check_input(options.forecast)
        try:
            with open(options.forecast, "r") as f:
                predicted = Forecast.from_document(json.load(f))
        except (OSError, ValueError) as e:
            raise CommandError(f"Cannot read forecast {options.forecast}: {e}", EXIT_USAGE) from e
        except PipelineError as e:
            raise CommandError(str(e), EXIT_USAGE) from e

        target = pipeline.get("target_resolution")
        path = self.out_dir / f"trajectory_p{predicted.point_id}{EXTENSIONS[options.format]}"
        try:
            result = export_trajectory(
                predicted,
                path,
                options.format,
                tuple(target) if target else None,
                float(pipeline["points_per_second"]),
                tuple(pipeline["source_resolution"]),
            )
        except ExportError as e:
            raise CommandError(str(e), EXIT_USAGE) from e
        self.record(result)
        return EXIT_OK
