# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Trajectory types, variance-based selection and the temporal split.

Time is always in seconds; coordinates are in pixels.
"""

from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

logger = logging.getLogger(__name__)

AXES = ("x", "y")

# train / validation boundaries as tenths of the sample count
TRAIN_TENTHS = 8
VALIDATION_TENTHS = 9
MIN_SPLIT_SAMPLES = 10


class IngestionError(Exception):
    """Base exception for trajectory ingestion."""
    pass


class SplitError(IngestionError):
    """Raised when a trajectory is too short to split."""
    pass


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Time series of (t, x, y) samples for one tracked point.

    Attributes:
        point_id: Tracker query-point identifier
        t: Sample times in seconds, strictly increasing
        x: Horizontal pixel coordinates
        y: Vertical pixel coordinates
        fps: Frame rate the samples were taken at
    """
    point_id: int
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    fps: float

    def __post_init__(self):
        arrays = {}
        for name in ("t", "x", "y"):
            values = np.array(getattr(self, name), dtype=float)
            if values.ndim != 1:
                raise IngestionError(f"{name} must be one-dimensional")
            values.setflags(write=False)
            arrays[name] = values
        if not (arrays["t"].size == arrays["x"].size == arrays["y"].size):
            raise IngestionError("t, x and y must have the same length")
        if arrays["t"].size == 0:
            raise IngestionError("A trajectory needs at least one sample")
        if arrays["t"].size > 1 and not np.all(np.diff(arrays["t"]) > 0):
            raise IngestionError(f"Point {self.point_id}: t must be strictly increasing")
        if not (np.all(np.isfinite(arrays["x"])) and np.all(np.isfinite(arrays["y"]))):
            raise IngestionError(f"Point {self.point_id}: coordinates must be finite")
        if not self.fps > 0:
            raise IngestionError(f"fps must be positive, got {self.fps}")
        for name, values in arrays.items():
            object.__setattr__(self, name, values)
        object.__setattr__(self, "point_id", int(self.point_id))
        object.__setattr__(self, "fps", float(self.fps))

    def __len__(self) -> int:
        return int(self.t.size)

    @property
    def samples(self) -> List[Tuple[float, float, float]]:
        return list(zip(self.t.tolist(), self.x.tolist(), self.y.tolist()))

    @property
    def dt(self) -> float:
        """Grid spacing in seconds."""
        return 1.0 / self.fps

    def axis(self, name: str) -> np.ndarray:
        """Coordinate values of axis ``x`` or ``y``."""
        if name not in AXES:
            raise IngestionError(f"Unknown axis {name!r}, expected one of {AXES}")
        return getattr(self, name)

    def segment(self, lo: int, hi: int) -> "Trajectory":
        """Contiguous samples ``lo`` (inclusive) to ``hi`` (exclusive)."""
        return Trajectory(self.point_id, self.t[lo:hi], self.x[lo:hi], self.y[lo:hi], self.fps)

    def with_coordinates(self, x: Sequence[float], y: Sequence[float]) -> "Trajectory":
        return Trajectory(self.point_id, self.t, x, y, self.fps)


@dataclass
class TrajectorySet:
    """Trajectories sharing one frame rate and time base.

    Attributes:
        trajectories: Member trajectories
        source: File the set was loaded from, if any
        grid_size: Tracker query grid size M, if known
    """
    trajectories: List[Trajectory] = field(default_factory=list)
    source: Optional[str] = None
    grid_size: Optional[int] = None

    def __post_init__(self):
        rates = {trajectory.fps for trajectory in self.trajectories}
        if len(rates) > 1:
            raise IngestionError(f"Trajectories disagree on fps: {sorted(rates)}")

    def __len__(self) -> int:
        return len(self.trajectories)

    def __iter__(self) -> Iterator[Trajectory]:
        return iter(self.trajectories)

    @property
    def fps(self) -> Optional[float]:
        return self.trajectories[0].fps if self.trajectories else None

    @property
    def point_ids(self) -> List[int]:
        return [trajectory.point_id for trajectory in self.trajectories]

    def get(self, point_id: int) -> Trajectory:
        for trajectory in self.trajectories:
            if trajectory.point_id == point_id:
                return trajectory
        raise KeyError(f"No trajectory for point {point_id}")


@dataclass(frozen=True)
class SplitTrajectory:
    """Train, validation and test segments of one trajectory.

    Attributes:
        train: First 80% of samples
        validation: Next 10%
        test: Remaining samples
        boundaries: Last time of the train and validation segments
    """
    train: Trajectory
    validation: Trajectory
    test: Trajectory
    boundaries: Tuple[float, float]

    @property
    def point_id(self) -> int:
        return self.train.point_id


def variance_score(trajectory: Trajectory) -> float:
    """Population variance of x plus that of y."""
    return float(np.var(trajectory.x) + np.var(trajectory.y))


def select_top_k_by_variance(trajectory_set: TrajectorySet, k: int) -> TrajectorySet:
    """Keep the ``k`` trajectories with the largest variance score.

    Ties go to the lower point_id. The result is ordered by descending score.
    """
    if k < 1:
        raise IngestionError(f"k must be at least 1, got {k}")
    ranked = sorted(
        trajectory_set.trajectories,
        key=lambda trajectory: (-variance_score(trajectory), trajectory.point_id),
    )
    selected = ranked[:k]
    logger.debug(f"Selected points {[t.point_id for t in selected]} of {len(ranked)}")
    return TrajectorySet(selected, trajectory_set.source, trajectory_set.grid_size)


def temporal_split(trajectory: Trajectory) -> SplitTrajectory:
    """Split 80/10/10 along time, boundaries at floor(0.8 T) and floor(0.9 T).

    Raises:
        SplitError: If the trajectory has fewer than 10 samples
    """
    total = len(trajectory)
    if total < MIN_SPLIT_SAMPLES:
        raise SplitError(
            f"Point {trajectory.point_id}: need at least {MIN_SPLIT_SAMPLES} samples "
            f"to split, got {total}"
        )
    train_end = (TRAIN_TENTHS * total) // 10
    validation_end = (VALIDATION_TENTHS * total) // 10
    train = trajectory.segment(0, train_end)
    validation = trajectory.segment(train_end, validation_end)
    test = trajectory.segment(validation_end, total)
    return SplitTrajectory(
        train=train,
        validation=validation,
        test=test,
        boundaries=(float(train.t[-1]), float(validation.t[-1])),
    )
