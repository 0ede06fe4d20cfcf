# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Reading and writing tracked-point CSV files.

File layout::

    point_id,frame,x,y
    0,0,320.0,240.0
    0,1,321.5,239.1
    ...

The frame rate comes from the ``fps`` argument or from a JSON sidecar next
to the CSV (``tracks.csv`` -> ``tracks.json``) holding ``fps`` and
optionally ``grid_size``. Row numbers in error messages are file line
numbers, the header being line 1.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union
import logging

import numpy as np
import pandas as pd

from ..output import ExporterRegistry, ExportResult
from .trajectory import IngestionError, Trajectory, TrajectorySet

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("point_id", "frame", "x", "y")
HEADER_LINE = 1


class TrajectoryLoadError(IngestionError):
    """Raised when a trajectory file cannot be loaded.

    Attributes:
        row: File line number of the offending row, if known
    """

    def __init__(self, message: str, row: Optional[int] = None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class MissingColumnsError(TrajectoryLoadError):
    pass


class NonMonotonicFramesError(TrajectoryLoadError):
    pass


class DuplicateFrameError(TrajectoryLoadError):
    pass


class NonFiniteCoordinateError(TrajectoryLoadError):
    pass


class MissingFpsError(TrajectoryLoadError):
    pass


class TooFewSamplesError(TrajectoryLoadError):
    pass


def sidecar_path(csv_path: Union[str, Path]) -> Path:
    return Path(csv_path).with_suffix(".json")


def read_sidecar(csv_path: Union[str, Path]) -> Dict[str, Any]:
    """Sidecar contents, or an empty dict when there is none."""
    path = sidecar_path(csv_path)
    if not path.exists():
        return {}
    try:
        with open(path, "r") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise TrajectoryLoadError(f"Cannot read sidecar {path}: {e}")


def _read_frame(path: Path) -> pd.DataFrame:
    try:
        return pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise MissingColumnsError(f"{path} has no header", row=HEADER_LINE)
    except (OSError, pd.errors.ParserError) as e:
        raise TrajectoryLoadError(f"Cannot read {path}: {e}")


def _first_row(mask: pd.Series) -> int:
    return int(mask[mask].index[0]) + HEADER_LINE + 1


def load_trajectories(path: Union[str, Path], fps: Optional[float] = None) -> TrajectorySet:
    """Load a tracked-point CSV into a TrajectorySet.

    Args:
        path: CSV file with header ``point_id,frame,x,y``
        fps: Frame rate; read from the sidecar when omitted

    Returns:
        Trajectories ordered by point_id, times in seconds

    Raises:
        TrajectoryLoadError: One of its subclasses, naming the row
    """
    path = Path(path)
    frame = _read_frame(path)

    missing = [column for column in REQUIRED_COLUMNS if column not in frame.columns]
    if missing:
        raise MissingColumnsError(f"missing columns {missing}", row=HEADER_LINE)

    sidecar = read_sidecar(path)
    grid_size = sidecar.get("grid_size")
    if fps is None:
        fps = sidecar.get("fps")

    if frame.empty:
        logger.info(f"{path} holds no samples")
        return TrajectorySet([], str(path), grid_size)

    if fps is None:
        raise MissingFpsError(f"no fps given and no 'fps' in {sidecar_path(path)}")
    fps = float(fps)
    if not fps > 0:
        raise MissingFpsError(f"fps must be positive, got {fps}")

    numeric = frame.loc[:, list(REQUIRED_COLUMNS)].apply(pd.to_numeric, errors="coerce")

    bad_ids = numeric["point_id"].isna() | numeric["frame"].isna()
    if bad_ids.any():
        raise TrajectoryLoadError("point_id and frame must be numeric", row=_first_row(bad_ids))

    bad_coordinates = ~np.isfinite(numeric[["x", "y"]]).all(axis=1)
    if bad_coordinates.any():
        raise NonFiniteCoordinateError(
            "x and y must be finite numbers", row=_first_row(bad_coordinates)
        )

    duplicates = numeric.duplicated(["point_id", "frame"])
    if duplicates.any():
        first = duplicates.idxmax()
        raise DuplicateFrameError(
            f"duplicate frame {numeric.at[first, 'frame']:g} "
            f"for point {numeric.at[first, 'point_id']:g}",
            row=_first_row(duplicates),
        )

    trajectories = []
    for point_id, group in numeric.groupby("point_id", sort=True):
        frames = group["frame"].to_numpy()
        steps = np.diff(frames)
        if steps.size and (steps <= 0).any():
            position = int(np.argmax(steps <= 0)) + 1
            row = int(group.index[position]) + HEADER_LINE + 1
            raise NonMonotonicFramesError(
                f"frame {frames[position]:g} follows {frames[position - 1]:g} "
                f"for point {point_id:g}",
                row=row,
            )
        if len(group) < 2:
            raise TooFewSamplesError(
                f"point {point_id:g} has a single sample",
                row=int(group.index[0]) + HEADER_LINE + 1,
            )
        trajectories.append(
            Trajectory(
                point_id=int(point_id),
                t=frames / fps,
                x=group["x"].to_numpy(),
                y=group["y"].to_numpy(),
                fps=fps,
            )
        )

    logger.info(f"Loaded {len(trajectories)} trajectories from {path}")
    return TrajectorySet(trajectories, str(path), grid_size)


def write_trajectories(
    trajectory_set: TrajectorySet,
    path: Union[str, Path],
    extra_metadata: Optional[Dict[str, Any]] = None,
) -> Dict[str, ExportResult]:
    """Write the CSV and its sidecar.

    Args:
        trajectory_set: Trajectories to write
        path: CSV path; the sidecar goes next to it
        extra_metadata: Additional sidecar keys (system spec, equations)

    Returns:
        Export results keyed by file name
    """
    sidecar = {"fps": trajectory_set.fps, "grid_size": trajectory_set.grid_size}
    sidecar.update(extra_metadata or {})
    csv_result = ExporterRegistry.export("trajectory_csv", trajectory_set, path)
    sidecar_result = ExporterRegistry.export("trajectory_sidecar", sidecar, sidecar_path(path))
    return {
        Path(csv_result.file_path).name: csv_result,
        Path(sidecar_result.file_path).name: sidecar_result,
    }
