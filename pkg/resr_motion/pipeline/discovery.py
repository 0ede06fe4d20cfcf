# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Equation discovery for observed trajectories.

For each axis the train segment is matched against the equation bank, the
top entries seed an evolutionary search, and the reported equation is the
front member with the lowest validation MSE. The held-out test segment is
scored with protected evaluation switched off.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple
import logging
import math

import numpy as np

from ..bank import EquationBank
from ..expr import (
    ExprError,
    Expr,
    commutative_ted_similarity,
    evaluate_array,
    normalized_ted_similarity,
    parse,
    to_string,
)
from ..ingestion import (
    AXES,
    SplitTrajectory,
    TrajectorySet,
    select_top_k_by_variance,
    temporal_split,
)
from ..output.version import CompatibilityStatus, check_version_compatibility
from ..retrieval import DEFAULT_METRIC, METRICS, RetrievalQuery, retrieve_top_k
from ..search import (
    PENALTY_MSE,
    Candidate,
    ConvergenceLog,
    ParetoFront,
    SearchConfig,
    SearchConfigError,
    evolve,
    mean_squared_error,
)

logger = logging.getLogger(__name__)

RESULT_FORMAT_VERSION = "1.0.0"
DEFAULT_TOP_K_TRAJECTORIES = 5


class PipelineError(Exception):
    """Base exception for pipeline errors."""
    pass


class ForecastError(PipelineError):
    """Raised when a forecast produces a non-finite point.

    Attributes:
        t: Time of the first offending sample
    """

    def __init__(self, message: str, t: Optional[float] = None):
        super().__init__(message)
        self.t = t


class ExportError(PipelineError):
    """Raised when a forecast cannot be resampled or written."""
    pass


@dataclass(frozen=True)
class PipelineConfig:
    """Everything ``discover`` needs besides the data and the bank.

    Attributes:
        search: Search settings; ``search.seed`` is the master seed
        metric: Retrieval distance
        band: Sakoe-Chiba band for DTW, None for unconstrained
        top_k_trajectories: Trajectories kept by ``discover_set``
    """
    search: SearchConfig = field(default_factory=SearchConfig)
    metric: str = DEFAULT_METRIC
    band: Optional[int] = None
    top_k_trajectories: int = DEFAULT_TOP_K_TRAJECTORIES

    def __post_init__(self):
        if self.metric not in METRICS:
            raise SearchConfigError(f"Unknown retrieval metric {self.metric!r}, expected one of {METRICS}")
        if self.band is not None and int(self.band) < 0:
            raise SearchConfigError(f"band must be non-negative, got {self.band}")
        if int(self.top_k_trajectories) < 1:
            raise SearchConfigError(
                f"top_k_trajectories must be at least 1, got {self.top_k_trajectories}"
            )

    @classmethod
    def from_mapping(cls, config: Mapping[str, Any]) -> "PipelineConfig":
        """Build from a full nested configuration (``search``, ``retrieval``, ``pipeline``)."""
        retrieval = dict(config.get("retrieval") or {})
        pipeline = dict(config.get("pipeline") or {})
        search = SearchConfig.from_mapping(config.get("search") or {})
        return cls(
            search=search,
            metric=retrieval.get("metric", DEFAULT_METRIC),
            band=retrieval.get("band"),
            top_k_trajectories=int(
                pipeline.get("top_k_trajectories", DEFAULT_TOP_K_TRAJECTORIES)
            ),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "search": self.search.to_dict(),
            "retrieval": {"metric": self.metric, "band": self.band},
            "pipeline": {"top_k_trajectories": self.top_k_trajectories},
        }


@dataclass
class AxisDiscovery:
    """Search outcome for one coordinate axis."""
    axis: str
    expr: Expr
    train_mse: float
    validation_mse: float
    front: ParetoFront
    log: ConvergenceLog
    retrieved: List[str] = field(default_factory=list)
    penalized: bool = False


@dataclass
class DiscoveryResult:
    """Discovered equations of one trajectory and how well they do.

    Attributes:
        point_id: Trajectory the equations were fitted to
        f_x: Selected x(t)
        f_y: Selected y(t)
        validation_mse: Per-axis validation MSE of the selected equation
        test_mse: Mean over test samples of ((x'-x)^2 + (y'-y)^2) / 2, in px^2
        divergent: True when the search or the test evaluation failed
        ted_similarity: Per-axis normalized TED similarity to the ground truth
        ted_commutative: Same, up to reordering of add/mul children
        convergence: Per-axis convergence logs
        fronts: Per-axis final Pareto fronts
        retrieved: Per-axis retrieved bank ids, best first
        t_last: Last observed time
        dt: Observed grid spacing
        config: Snapshot of the configuration used
        warnings: Recoverable problems met during discovery
    """
    point_id: int
    f_x: Expr
    f_y: Expr
    validation_mse: Dict[str, float]
    test_mse: float
    divergent: bool
    t_last: float
    dt: float
    ted_similarity: Optional[Dict[str, float]] = None
    ted_commutative: Optional[Dict[str, float]] = None
    convergence: Dict[str, ConvergenceLog] = field(default_factory=dict)
    fronts: Dict[str, ParetoFront] = field(default_factory=dict)
    retrieved: Dict[str, List[str]] = field(default_factory=dict)
    config: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    format_version: str = RESULT_FORMAT_VERSION

    @property
    def equations(self) -> Dict[str, Expr]:
        return {"x": self.f_x, "y": self.f_y}

    @property
    def mean_ted(self) -> float:
        if not self.ted_similarity:
            return math.nan
        return float(np.mean([self.ted_similarity[axis] for axis in AXES]))

    @property
    def mean_ted_commutative(self) -> float:
        if not self.ted_commutative:
            return math.nan
        return float(np.mean([self.ted_commutative[axis] for axis in AXES]))

    @property
    def mean_validation_mse(self) -> float:
        return float(np.mean([self.validation_mse[axis] for axis in AXES]))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format_version": self.format_version,
            "point_id": self.point_id,
            "f_x": to_string(self.f_x),
            "f_y": to_string(self.f_y),
            "validation_mse": dict(self.validation_mse),
            "test_mse": self.test_mse,
            "divergent": self.divergent,
            "t_last": self.t_last,
            "dt": self.dt,
            "ted_similarity": self.ted_similarity,
            "ted_commutative": self.ted_commutative,
            "convergence": {axis: log.to_records() for axis, log in self.convergence.items()},
            "fronts": {
                axis: [
                    {"complexity": c.complexity, "mse": c.mse, "expression": to_string(c.expr)}
                    for c in front.members()
                ]
                for axis, front in self.fronts.items()
            },
            "retrieved": {axis: list(ids) for axis, ids in self.retrieved.items()},
            "config": self.config,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DiscoveryResult":
        """Rebuild a result written by ``to_dict``.

        Raises:
            PipelineError: On an incompatible format version or malformed content
        """
        version = str(data.get("format_version", ""))
        status, warnings, errors = check_version_compatibility(version, RESULT_FORMAT_VERSION)
        if status == CompatibilityStatus.INCOMPATIBLE:
            raise PipelineError("; ".join(errors))
        for message in warnings:
            logger.warning(message)
        try:
            fronts = {
                axis: ParetoFront(
                    Candidate(parse(m["expression"]), _as_float(m["mse"]), int(m["complexity"]), 0,
                              _as_float(m["mse"]))
                    for m in members
                )
                for axis, members in (data.get("fronts") or {}).items()
            }
            return cls(
                point_id=int(data["point_id"]),
                f_x=parse(data["f_x"]),
                f_y=parse(data["f_y"]),
                validation_mse={k: _as_float(v) for k, v in data["validation_mse"].items()},
                test_mse=_as_float(data["test_mse"]),
                divergent=bool(data["divergent"]),
                t_last=float(data["t_last"]),
                dt=float(data["dt"]),
                ted_similarity=data.get("ted_similarity"),
                ted_commutative=data.get("ted_commutative"),
                convergence={
                    axis: ConvergenceLog.from_records(records)
                    for axis, records in (data.get("convergence") or {}).items()
                },
                fronts=fronts,
                retrieved={k: list(v) for k, v in (data.get("retrieved") or {}).items()},
                config=dict(data.get("config") or {}),
                warnings=list(data.get("warnings") or []) + warnings,
                format_version=version,
            )
        except (KeyError, TypeError, ValueError, ExprError) as e:
            raise PipelineError(f"Malformed discovery result: {e}") from e


def _as_float(value) -> float:
    return math.inf if value is None else float(value)


@dataclass
class SetDiscovery:
    """Per-trajectory results of ``discover_set`` with their means."""
    results: List[DiscoveryResult]

    def __iter__(self):
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    @property
    def mean_test_mse(self) -> float:
        values = [r.test_mse for r in self.results if not r.divergent]
        return float(np.mean(values)) if values else math.nan

    @property
    def mean_ted(self) -> float:
        values = [r.mean_ted for r in self.results if r.ted_similarity]
        return float(np.mean(values)) if values else math.nan

    @property
    def divergent_count(self) -> int:
        return sum(1 for r in self.results if r.divergent)


def _axis_seed(seed: Optional[int], axis: str) -> Optional[int]:
    return None if seed is None else int(seed) + AXES.index(axis)


def discover_axis(
    split: SplitTrajectory,
    axis: str,
    bank: Optional[EquationBank],
    config: PipelineConfig,
) -> AxisDiscovery:
    """Retrieve, evolve and select for one axis."""
    search = config.search.replace(seed=_axis_seed(config.search.seed, axis))
    retrieved_exprs: List[Expr] = []
    retrieved_ids: List[str] = []
    if search.n_seed > 0 and bank is not None and len(bank):
        query = RetrievalQuery.from_trajectory(split.train, axis, search.top_k_retrieval)
        ranking = retrieve_top_k(query, bank, config.metric, config.band, search.workers)
        retrieved_exprs, retrieved_ids = ranking.expressions, ranking.ids
        logger.info(f"Point {split.point_id} axis {axis}: retrieved {retrieved_ids}")

    validation = split.validation
    result = evolve(
        search,
        split.train.t,
        split.train.axis(axis),
        retrieved=retrieved_exprs,
        t_val=validation.t,
        y_val=validation.axis(axis),
    )
    selected = result.front.select_by_validation(validation.t, validation.axis(axis))
    validation_mse = mean_squared_error(selected.expr, validation.t, validation.axis(axis))
    return AxisDiscovery(
        axis=axis,
        expr=selected.expr,
        train_mse=selected.mse,
        validation_mse=validation_mse,
        front=result.front,
        log=result.log,
        retrieved=retrieved_ids,
        penalized=result.front.all_penalized,
    )


def combined_test_mse(f_x: Expr, f_y: Expr, split: SplitTrajectory) -> float:
    """Combined test MSE with protected operators off; inf when non-finite."""
    test = split.test
    with np.errstate(all="ignore"):
        x_hat = evaluate_array(f_x, test.t, protected=False)
        y_hat = evaluate_array(f_y, test.t, protected=False)
        value = float(np.mean(((x_hat - test.x) ** 2 + (y_hat - test.y) ** 2) / 2.0))
    return value if math.isfinite(value) else math.inf


def discover(
    split: SplitTrajectory,
    bank: Optional[EquationBank],
    config: Optional[PipelineConfig] = None,
    ground_truth: Optional[Tuple[Expr, Expr]] = None,
) -> DiscoveryResult:
    """Discover x(t) and y(t) for one split trajectory.

    Args:
        split: Train, validation and test segments
        bank: Equation bank; None (or alpha = 0) runs the plain baseline
        config: Pipeline settings
        ground_truth: Analytic ``(x(t), y(t))`` to score TED against

    Returns:
        The discovery result; divergence is reported in ``divergent``
    """
    config = config or PipelineConfig()
    axes = {axis: discover_axis(split, axis, bank, config) for axis in AXES}
    f_x, f_y = axes["x"].expr, axes["y"].expr

    warnings = []
    divergent = False
    for axis, found in axes.items():
        if found.penalized or found.train_mse >= PENALTY_MSE:
            divergent = True
            warnings.append(f"axis {axis}: every candidate hit the penalty value")
    mse = combined_test_mse(f_x, f_y, split)
    if not math.isfinite(mse):
        divergent = True
        warnings.append("test evaluation is not finite")
    for message in warnings:
        logger.warning(f"Point {split.point_id} divergent: {message}")

    ted = ted_commutative = None
    if ground_truth is not None and all(e is not None for e in ground_truth):
        truth = dict(zip(AXES, ground_truth))
        found_exprs = {"x": f_x, "y": f_y}
        ted = {axis: normalized_ted_similarity(found_exprs[axis], truth[axis]) for axis in AXES}
        ted_commutative = {
            axis: commutative_ted_similarity(found_exprs[axis], truth[axis]) for axis in AXES
        }

    trajectory_dt = split.train.dt
    result = DiscoveryResult(
        point_id=split.point_id,
        f_x=f_x,
        f_y=f_y,
        validation_mse={axis: found.validation_mse for axis, found in axes.items()},
        test_mse=mse,
        divergent=divergent,
        t_last=float(split.test.t[-1]),
        dt=trajectory_dt,
        ted_similarity=ted,
        ted_commutative=ted_commutative,
        convergence={axis: found.log for axis, found in axes.items()},
        fronts={axis: found.front for axis, found in axes.items()},
        retrieved={axis: found.retrieved for axis, found in axes.items()},
        config=config.to_dict(),
        warnings=warnings,
    )
    logger.info(
        f"Point {split.point_id}: x = {to_string(f_x)}, y = {to_string(f_y)}, "
        f"test MSE {mse:.6g}"
    )
    return result


def discover_set(
    trajectory_set: TrajectorySet,
    bank: Optional[EquationBank],
    config: Optional[PipelineConfig] = None,
    ground_truth: Optional[Tuple[Expr, Expr]] = None,
) -> SetDiscovery:
    """Run ``discover`` on the top-k trajectories by variance.

    The same ground truth is used for every selected trajectory; tracked
    points that move with the object differ from it by a constant offset.
    """
    config = config or PipelineConfig()
    selected = select_top_k_by_variance(trajectory_set, config.top_k_trajectories)
    results = [
        discover(temporal_split(trajectory), bank, config, ground_truth)
        for trajectory in selected
    ]
    return SetDiscovery(results)


def ground_truth_from_sidecar(sidecar: Mapping[str, Any]) -> Optional[Tuple[Expr, Expr]]:
    """Analytic equations from a trajectory sidecar, when it carries them."""
    analytic_x, analytic_y = sidecar.get("analytic_x"), sidecar.get("analytic_y")
    if not analytic_x or not analytic_y:
        return None
    return parse(analytic_x), parse(analytic_y)

