# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Forecast beyond the observed interval from a discovery result.

Usage:
    resr forecast --result runs/discovery_p0.json --steps 150
    resr forecast --result runs/discovery_p0.json --dt 0.1 --format csv
"""

import json
from typing import Any, Dict

from ..pipeline import DiscoveryResult, ForecastError, PipelineError, forecast
from .base import EXIT_DIVERGENT, EXIT_OK, EXIT_USAGE, BaseCommand, CommandError

FORMATS = {"json": ("forecast_json", ".json"), "csv": ("forecast_csv", ".csv")}


def read_discovery(path) -> DiscoveryResult:
    try:
        with open(path, "r") as f:
            return DiscoveryResult.from_dict(json.load(f))
    except (OSError, ValueError) as e:
        raise CommandError(f"Cannot read discovery result {path}: {e}", EXIT_USAGE) from e
    except PipelineError as e:
        raise CommandError(str(e), EXIT_USAGE) from e


class ForecastCommand(BaseCommand):
    """Evaluate discovered equations over a forecast horizon."""

    name = "forecast"
    help = "Forecast future samples from a discovery result"

    def add_arguments(self, parser):
        parser.add_argument("--result", required=True, help="discovery_p<ID>.json from discover")
        parser.add_argument("--steps", type=int, help="Forecast horizon K")
        parser.add_argument("--dt", type=float, help="Spacing in seconds (default: observed)")
        parser.add_argument("--format", choices=sorted(FORMATS), default="json", help="Output format")

    def config_overrides(self, options) -> Dict[str, Any]:
        return {"pipeline.forecast_steps": options.steps}

    def handle(self, options, settings) -> int:
        self.check_input(options.result)
        result = read_discovery(options.result)
        steps = int(settings["pipeline"]["forecast_steps"])
        try:
            predicted = forecast(result, steps, options.dt)
        except ForecastError as e:
            raise CommandError(str(e), EXIT_DIVERGENT) from e
        except PipelineError as e:
            raise CommandError(str(e), EXIT_USAGE) from e
        format_name, extension = FORMATS[options.format]
        self.export(format_name, predicted, f"forecast_p{result.point_id}{extension}")
        return EXIT_OK
