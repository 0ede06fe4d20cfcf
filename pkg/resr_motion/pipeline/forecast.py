# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Forecasting beyond the observed interval and exporting the result."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union
import logging
import math

import numpy as np

from ..expr import Expr, ExprError, evaluate_array, parse, to_string
from ..output import ExporterRegistry, ExportResult, RegistryError
from .discovery import DiscoveryResult, ExportError, ForecastError, PipelineError

logger = logging.getLogger(__name__)

DEFAULT_POINTS_PER_SECOND = 2.0
DEFAULT_RESOLUTION = (640, 480)
EXPORT_FORMATS = {"json": "forecast_json", "csv": "forecast_csv"}


@dataclass(frozen=True, eq=False)
class Forecast:
    """Predicted samples after the last observed time.

    Attributes:
        t: Forecast times, ``t_last + i * dt`` for i = 1..K unless resampled
        x: Predicted x coordinates
        y: Predicted y coordinates
        dt: Spacing of the forecast grid
        point_id: Trajectory of the discovery result the forecast came from
        f_x: Equation used for x
        f_y: Equation used for y
        t_last: Last observed time
        extra: Additional metadata (resampling, resolution)
    """
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    dt: float
    point_id: int
    f_x: Expr
    f_y: Expr
    t_last: float
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def horizon(self) -> int:
        return int(self.t.size)

    def __len__(self) -> int:
        return self.horizon

    @property
    def samples(self):
        return list(zip(self.t.tolist(), self.x.tolist(), self.y.tolist()))

    @property
    def duration(self) -> float:
        """Seconds covered after the last observation."""
        return self.horizon * self.dt

    def describe(self) -> Dict[str, Any]:
        description = {
            "point_id": self.point_id,
            "f_x": to_string(self.f_x),
            "f_y": to_string(self.f_y),
            "t_last": self.t_last,
            "dt": self.dt,
            "horizon": self.horizon,
        }
        description.update(self.extra)
        return description

    @classmethod
    def from_document(cls, document: Mapping[str, Any]) -> "Forecast":
        """Rebuild from a ``forecast_json`` document."""
        try:
            metadata = dict(document["metadata"])
            points = np.array(document["points"], dtype=float).reshape(-1, 2)
            extra = {
                key: value for key, value in metadata.items()
                if key not in ("point_id", "f_x", "f_y", "t_last", "dt", "horizon")
            }
            return cls(
                t=np.array(document["t"], dtype=float),
                x=points[:, 0],
                y=points[:, 1],
                dt=float(metadata["dt"]),
                point_id=int(metadata["point_id"]),
                f_x=parse(metadata["f_x"]),
                f_y=parse(metadata["f_y"]),
                t_last=float(metadata["t_last"]),
                extra=extra,
            )
        except (KeyError, TypeError, ValueError, ExprError) as e:
            raise PipelineError(f"Malformed forecast document: {e}") from e


def forecast(result: DiscoveryResult, steps: int, dt: Optional[float] = None) -> Forecast:
    """Evaluate the discovered equations at ``t_last + i * dt``, i = 1..steps.

    Protected operators are off.

    Args:
        result: Discovery result holding f_x, f_y and the observed grid
        steps: Horizon K, at least 1
        dt: Spacing; defaults to the observed grid spacing

    Raises:
        ForecastError: If any forecast value is not finite; ``t`` names the
            first offending time
    """
    if int(steps) < 1:
        raise PipelineError(f"steps must be at least 1, got {steps}")
    spacing = result.dt if dt is None else float(dt)
    if not spacing > 0:
        raise PipelineError(f"dt must be positive, got {dt}")

    t = result.t_last + np.arange(1, int(steps) + 1) * spacing
    with np.errstate(all="ignore"):
        x = evaluate_array(result.f_x, t, protected=False)
        y = evaluate_array(result.f_y, t, protected=False)
    bad = ~(np.isfinite(x) & np.isfinite(y))
    if bad.any():
        first = float(t[int(np.argmax(bad))])
        raise ForecastError(f"forecast is not finite at t = {first:.6g}", t=first)
    logger.info(f"Forecast {steps} steps of {spacing:.6g} s for point {result.point_id}")
    return Forecast(t, x, y, spacing, result.point_id, result.f_x, result.f_y, result.t_last)


def resample_count(forecast_: Forecast, points_per_second: float) -> int:
    """Number of exported samples: ``floor(K * dt * pps)``."""
    return int(math.floor(forecast_.duration * points_per_second + 1e-9))


def resample(
    forecast_: Forecast,
    points_per_second: float = DEFAULT_POINTS_PER_SECOND,
    source_resolution: Tuple[float, float] = DEFAULT_RESOLUTION,
    target_resolution: Optional[Tuple[float, float]] = None,
) -> Forecast:
    """Nearest-grid resampling followed by an affine rescale.

    Sample j (1-based) is the forecast point nearest ``t_last + j / pps``.
    Coordinates are scaled by ``target / source`` per axis.
    """
    if not points_per_second > 0:
        raise ExportError(f"points_per_second must be positive, got {points_per_second}")
    target = tuple(source_resolution) if target_resolution is None else tuple(target_resolution)
    if min(*source_resolution, *target) <= 0:
        raise ExportError(f"resolutions must be positive: {source_resolution} -> {target}")

    count = resample_count(forecast_, points_per_second)
    if count < 1:
        raise ExportError(
            f"a {forecast_.duration:.6g} s forecast holds no sample at {points_per_second} points/s"
        )
    wanted = np.arange(1, count + 1) / points_per_second
    index = np.clip(np.rint(wanted / forecast_.dt).astype(int) - 1, 0, forecast_.horizon - 1)

    scale_x = target[0] / source_resolution[0]
    scale_y = target[1] / source_resolution[1]
    extra = dict(forecast_.extra)
    extra.update({
        "points_per_second": float(points_per_second),
        "source_resolution": [source_resolution[0], source_resolution[1]],
        "target_resolution": [target[0], target[1]],
    })
    return Forecast(
        t=forecast_.t[index],
        x=forecast_.x[index] * scale_x,
        y=forecast_.y[index] * scale_y,
        dt=1.0 / points_per_second,
        point_id=forecast_.point_id,
        f_x=forecast_.f_x,
        f_y=forecast_.f_y,
        t_last=forecast_.t_last,
        extra=extra,
    )


def export_trajectory(
    forecast_: Forecast,
    path: Union[str, Path],
    format: str = "json",
    target_resolution: Optional[Tuple[float, float]] = None,
    points_per_second: float = DEFAULT_POINTS_PER_SECOND,
    source_resolution: Tuple[float, float] = DEFAULT_RESOLUTION,
) -> ExportResult:
    """Resample, rescale and write a forecast as ``[x, y]`` pairs.

    Args:
        forecast_: Forecast to export
        path: Output file
        format: ``json`` (pairs plus metadata) or ``csv`` (``t,x,y`` rows)
        target_resolution: ``(width, height)`` to scale to; None keeps the source
        points_per_second: Output sampling rate
        source_resolution: ``(width, height)`` the forecast coordinates refer to

    Raises:
        ExportError: On bad parameters or when writing fails
    """
    if format not in EXPORT_FORMATS:
        raise ExportError(f"Unknown export format {format!r}, expected one of {sorted(EXPORT_FORMATS)}")
    resampled = resample(forecast_, points_per_second, source_resolution, target_resolution)
    try:
        result = ExporterRegistry.export(EXPORT_FORMATS[format], resampled, path)
    except RegistryError as e:
        raise ExportError(str(e)) from e
    if not result.success:
        raise ExportError("; ".join(result.errors))
    return result
