# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tracked-point trajectories: loading, selection and the temporal split."""

from .loader import (
    DuplicateFrameError,
    MissingColumnsError,
    MissingFpsError,
    NonFiniteCoordinateError,
    NonMonotonicFramesError,
    TooFewSamplesError,
    TrajectoryLoadError,
    load_trajectories,
    read_sidecar,
    sidecar_path,
    write_trajectories,
)
from .trajectory import (
    AXES,
    IngestionError,
    SplitError,
    SplitTrajectory,
    Trajectory,
    TrajectorySet,
    select_top_k_by_variance,
    temporal_split,
    variance_score,
)

__all__ = [
    "DuplicateFrameError",
    "MissingColumnsError",
    "MissingFpsError",
    "NonFiniteCoordinateError",
    "NonMonotonicFramesError",
    "TooFewSamplesError",
    "TrajectoryLoadError",
    "load_trajectories",
    "read_sidecar",
    "sidecar_path",
    "write_trajectories",
    "AXES",
    "IngestionError",
    "SplitError",
    "SplitTrajectory",
    "Trajectory",
    "TrajectorySet",
    "select_top_k_by_variance",
    "temporal_split",
    "variance_score",
]
