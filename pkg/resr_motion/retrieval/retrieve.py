# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Top-k retrieval of bank equations by trajectory shape.

Every bank entry is materialized on the query's own time grid. With the
default ``ndtw`` metric the observed series is rescaled into the entry's
value range and aligned with DTW; the raw path cost is the distance.
``dtw`` and ``euclidean`` skip the rescaling.

Entries that are non-finite anywhere on the grid, or flat while the
observed series is not, get distance ``inf``. Ranking is by
``(distance, entry id)``.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
import math
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..bank import EquationBank, EquationBankEntry, materialize
from ..expr import Expr, to_string
from .distance import dtw_distance, euclidean_distance, rescale_to_range

logger = logging.getLogger(__name__)

METRICS = ("ndtw", "dtw", "euclidean")
DEFAULT_METRIC = "ndtw"


class RetrievalError(Exception):
    """Base exception for retrieval errors."""
    pass


class EmptyBankRetrievalError(RetrievalError):
    """Raised when retrieval is asked to rank an empty bank."""
    pass


@dataclass(frozen=True, eq=False)
class RetrievalQuery:
    """One observed axis to match against the bank.

    Attributes:
        values: Observed coordinates
        t_values: Sample times, also the grid bank entries are evaluated on
        k: Number of entries to return
        axis: Axis name, informational
    """
    values: np.ndarray
    t_values: np.ndarray
    k: int = 10
    axis: Optional[str] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        t_values = np.array(self.t_values, dtype=float)
        if values.ndim != 1 or values.size < 2:
            raise RetrievalError("A retrieval query needs at least 2 samples")
        if t_values.shape != values.shape:
            raise RetrievalError(
                f"t_values and values differ in length: {t_values.size} vs {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise RetrievalError("Query values must be finite")
        if int(self.k) < 1:
            raise RetrievalError(f"k must be at least 1, got {self.k}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "t_values", t_values)
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def from_trajectory(cls, trajectory, axis: str, k: int = 10) -> "RetrievalQuery":
        return cls(trajectory.axis(axis), trajectory.t, k, axis)


@dataclass(frozen=True)
class RankedEntry:
    entry_id: str
    distance: float
    expr: Expr

    @property
    def expression(self) -> str:
        return to_string(self.expr)


@dataclass
class RetrievalResult:
    """Ranked entries, best first.

    Attributes:
        ranking: Top ``min(k, len(bank))`` entries
        bounds: Per-entry ``(min, max)`` of the materialized series, for
            every scored entry; ``None`` when the series was non-finite
        metric: Distance used
        axis: Axis of the query, if known
    """
    ranking: List[RankedEntry]
    bounds: Dict[str, Optional[Tuple[float, float]]] = field(default_factory=dict)
    metric: str = DEFAULT_METRIC
    axis: Optional[str] = None

    @property
    def expressions(self) -> List[Expr]:
        return [item.expr for item in self.ranking]

    @property
    def ids(self) -> List[str]:
        return [item.entry_id for item in self.ranking]


def score_entry(
    entry: EquationBankEntry,
    t_values: np.ndarray,
    observed: np.ndarray,
    metric: str = DEFAULT_METRIC,
    band: Optional[int] = None,
) -> Tuple[float, Optional[Tuple[float, float]]]:
    """Distance between ``observed`` and one entry, plus the entry's bounds."""
    series = materialize(entry, t_values)
    if not np.all(np.isfinite(series)):
        return math.inf, None
    low, high = float(series.min()), float(series.max())

    if metric == "euclidean":
        return euclidean_distance(observed, series), (low, high)
    if metric == "dtw":
        return dtw_distance(observed, series, band), (low, high)

    entry_range = high - low
    if entry_range == 0:
        observed_flat = float(observed.max() - observed.min()) == 0
        return (0.0 if observed_flat else math.inf), (low, high)
    scaled = rescale_to_range(observed, low, high)
    return dtw_distance(scaled, series, band), (low, high)


def _score_star(args):
    return score_entry(*args)


def retrieve_top_k(
    query: RetrievalQuery,
    bank: EquationBank,
    metric: str = DEFAULT_METRIC,
    band: Optional[int] = None,
    workers: int = 1,
) -> RetrievalResult:
    """Rank bank entries by distance to the query and keep the best ``query.k``.

    Args:
        query: Observed axis and its time grid
        bank: Equation bank
        metric: One of ``ndtw``, ``dtw``, ``euclidean``
        band: Sakoe-Chiba half-width, ``None`` for unconstrained DTW
        workers: Process count; the ranking does not depend on it

    Raises:
        EmptyBankRetrievalError: If the bank has no entries
        RetrievalError: On an unknown metric
    """
    if metric not in METRICS:
        raise RetrievalError(f"Unknown metric {metric!r}; expected one of {METRICS}")
    entries = list(bank.entries)
    if not entries:
        raise EmptyBankRetrievalError("Cannot retrieve from an empty bank")

    jobs = [(entry, query.t_values, query.values, metric, band) for entry in entries]
    if workers > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            scores = list(executor.map(_score_star, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        scores = [_score_star(job) for job in jobs]

    scored = sorted(
        ((distance, entry.id, entry) for entry, (distance, _) in zip(entries, scores)),
        key=lambda item: (item[0], item[1]),
    )
    ranking = [
        RankedEntry(entry_id, float(distance), entry.expr)
        for distance, entry_id, entry in scored[: query.k]
    ]
    bounds = {entry.id: entry_bounds for entry, (_, entry_bounds) in zip(entries, scores)}

    if ranking:
        logger.info(
            f"Retrieved {len(ranking)} of {len(entries)} entries"
            f"{' for axis ' + query.axis if query.axis else ''} "
            f"(metric {metric}, best {ranking[0].entry_id} at {ranking[0].distance:.6g})"
        )
    return RetrievalResult(ranking, bounds, metric, query.axis)


def retrieve_axes(
    trajectory,
    bank: EquationBank,
    k: int = 10,
    metric: str = DEFAULT_METRIC,
    band: Optional[int] = None,
    workers: int = 1,
    axes: Sequence[str] = ("x", "y"),
) -> Dict[str, RetrievalResult]:
    """Retrieve independently for each axis of a trajectory."""
    return {
        axis: retrieve_top_k(
            RetrievalQuery.from_trajectory(trajectory, axis, k), bank, metric, band, workers
        )
        for axis in axes
    }
