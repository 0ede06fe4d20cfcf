# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Benchmark suites over synthetic systems, seeds and seeding ratios.

A suite is the grid systems x alphas x seeds. Every cell generates its own
ground truth, runs discovery and reports one row per discovered trajectory;
cells are independent and may run in parallel. Reports are assembled in
cell order so their contents do not depend on the number of workers.

Profiles:
    desk: 4 populations, 3 seeds, alphas {0, 0.75}, three closed-form systems
    full: 30 populations, 10 seeds, five alphas, all systems, 10 x 10 grid
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple
import copy
import logging
import math

import pandas as pd

from ..bank import BankError, EquationBank
from ..dynamics import (
    SYSTEM_KINDS,
    DynamicsError,
    add_noise,
    generate,
    sample_system_spec,
    synthesize_tracks,
)
from ..expr import ExprError, to_string
from ..ingestion import AXES, IngestionError, TrajectorySet, temporal_split
from ..retrieval import RetrievalError
from ..search import SearchConfig, SearchConfigError, SearchError
from .discovery import (
    DEFAULT_TOP_K_TRAJECTORIES,
    DiscoveryResult,
    PipelineConfig,
    PipelineError,
    discover,
    discover_set,
)

logger = logging.getLogger(__name__)

CELL_ERRORS = (
    BankError,
    DynamicsError,
    ExprError,
    IngestionError,
    PipelineError,
    RetrievalError,
    SearchError,
    ArithmeticError,
    ValueError,
)

BENCHMARK_PROFILES: Dict[str, Dict[str, Any]] = {
    "desk": {
        "systems": ["spring_mass", "damped_spring_mass", "projectile"],
        "seeds": 3,
        "alphas": [0.0, 0.75],
        "grid_size": None,
        "search": {"n_iterations": 100, "n_populations": 4, "population_size": 30},
    },
    "full": {
        "systems": list(SYSTEM_KINDS),
        "seeds": 10,
        "alphas": [0.0, 0.25, 0.5, 0.75, 1.0],
        "grid_size": 10,
        "top_k_trajectories": 5,
        "search": {"n_iterations": 100, "n_populations": 30, "population_size": 30},
    },
}
DEFAULT_PROFILE = "desk"

RUN_COLUMNS = [
    "system", "seed", "alpha", "point_id", "ted", "ted_commutative",
    "test_mse", "val_mse", "divergent", "expr_x", "expr_y", "error",
]
TABLE_COLUMNS = ["system", "alpha", "runs", "ted_mean", "ted_std", "mse_mean", "mse_std", "failed"]
CURVE_COLUMNS = ["alpha", "iteration", "train_mse_mean", "val_mse_mean"]
SUITE_KEYS = {
    "systems", "seeds", "alphas", "grid_size", "top_k_trajectories", "noise",
    "duration", "sample_rate", "workers", "search",
}


@dataclass(frozen=True)
class BenchmarkSuite:
    """What to run and with which budget.

    Attributes:
        profile: Profile the suite was built from
        systems: System kinds
        seeds: Seeds; each drives both data generation and search
        alphas: Seeding ratios to compare
        pipeline: Discovery settings shared by every cell
        grid_size: Emulated tracker grid M; None uses the object trajectory only
        noise: Gaussian pixel noise sigma
        duration: Seconds of generated motion
        sample_rate: Samples per second
        initial_state_ranges: Per-kind ranges for drawn initial states
        workers: Cells run in parallel
    """
    profile: str = DEFAULT_PROFILE
    systems: Tuple[str, ...] = tuple(BENCHMARK_PROFILES[DEFAULT_PROFILE]["systems"])
    seeds: Tuple[int, ...] = (0, 1, 2)
    alphas: Tuple[float, ...] = (0.0, 0.75)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    grid_size: Optional[int] = None
    noise: float = 0.0
    duration: float = 5.0
    sample_rate: float = 30.0
    initial_state_ranges: Optional[Mapping[str, Mapping[str, Sequence[float]]]] = None
    workers: int = 1

    def __post_init__(self):
        unknown = [kind for kind in self.systems if kind not in SYSTEM_KINDS]
        if unknown:
            raise SearchConfigError(f"Unknown systems {unknown}; known: {list(SYSTEM_KINDS)}")
        if not self.systems or not self.seeds or not self.alphas:
            raise SearchConfigError("systems, seeds and alphas must all be non-empty")
        if any(not 0.0 <= alpha <= 1.0 for alpha in self.alphas):
            raise SearchConfigError(f"alphas must lie in [0, 1], got {list(self.alphas)}")
        if self.grid_size is not None and self.grid_size < 1:
            raise SearchConfigError(f"grid_size must be positive, got {self.grid_size}")
        if self.noise < 0:
            raise SearchConfigError(f"noise must be non-negative, got {self.noise}")
        if self.workers < 1:
            raise SearchConfigError(f"workers must be at least 1, got {self.workers}")

    @classmethod
    def from_mapping(
        cls,
        config: Mapping[str, Any],
        profile: Optional[str] = None,
        **overrides,
    ) -> "BenchmarkSuite":
        """Build a suite from the full nested configuration.

        Values come from the profile, then the ``benchmark`` section, then
        ``overrides`` (non-None only). Search settings layer the ``search``
        section under the profile's and the ``benchmark.search`` ones.

        Raises:
            SearchConfigError: On an unknown profile or invalid values
        """
        section = dict(config.get("benchmark") or {})
        name = profile or section.get("profile") or DEFAULT_PROFILE
        section.pop("profile", None)
        unknown = sorted(set(section) - SUITE_KEYS)
        if unknown:
            raise SearchConfigError(f"Unknown benchmark settings: {unknown}")
        if name not in BENCHMARK_PROFILES:
            raise SearchConfigError(
                f"Unknown benchmark profile {name!r}; known: {sorted(BENCHMARK_PROFILES)}"
            )
        values = copy.deepcopy(BENCHMARK_PROFILES[name])
        profile_search = values.pop("search")
        section_search = section.pop("search", None) or {}
        values.update(section)
        values.update({key: value for key, value in overrides.items() if value is not None})

        search_values = dict(config.get("search") or {})
        search_values.update(profile_search)
        search_values.update(section_search)
        search_values["workers"] = 1
        pipeline_mapping = dict(config)
        pipeline_mapping["search"] = search_values
        pipeline_section = dict(config.get("pipeline") or {})
        pipeline_section["top_k_trajectories"] = values.pop(
            "top_k_trajectories",
            pipeline_section.get("top_k_trajectories", DEFAULT_TOP_K_TRAJECTORIES),
        )
        pipeline_mapping["pipeline"] = pipeline_section

        seeds = values.pop("seeds")
        seeds = tuple(range(int(seeds))) if isinstance(seeds, int) else tuple(int(s) for s in seeds)
        dynamics = dict(config.get("dynamics") or {})
        try:
            return cls(
                profile=name,
                systems=tuple(values.pop("systems")),
                seeds=seeds,
                alphas=tuple(float(alpha) for alpha in values.pop("alphas")),
                pipeline=PipelineConfig.from_mapping(pipeline_mapping),
                grid_size=values.pop("grid_size", None),
                noise=float(values.pop("noise", dynamics.get("noise", 0.0))),
                duration=float(values.pop("duration", dynamics.get("duration", 5.0))),
                sample_rate=float(values.pop("sample_rate", dynamics.get("sample_rate", 30.0))),
                initial_state_ranges=dynamics.get("initial_state_ranges"),
                workers=int(values.pop("workers", 1)),
            )
        except TypeError as e:
            raise SearchConfigError(str(e)) from e

    @property
    def cells(self) -> List["BenchmarkCell"]:
        """Cells in report order: system, then alpha, then seed."""
        return [
            BenchmarkCell(system, seed, alpha)
            for system in self.systems
            for alpha in self.alphas
            for seed in self.seeds
        ]

    @property
    def search(self) -> SearchConfig:
        return self.pipeline.search

    def to_dict(self) -> Dict[str, Any]:
        return {
            "profile": self.profile,
            "systems": list(self.systems),
            "seeds": list(self.seeds),
            "alphas": list(self.alphas),
            "grid_size": self.grid_size,
            "noise": self.noise,
            "duration": self.duration,
            "sample_rate": self.sample_rate,
            "workers": self.workers,
            **self.pipeline.to_dict(),
        }


@dataclass
class BenchmarkCell:
    """One (system, seed, alpha) job and what it produced."""
    system: str
    seed: int
    alpha: float
    rows: List[Dict[str, Any]] = field(default_factory=list)
    curves: List[Dict[str, Any]] = field(default_factory=list)
    error: Optional[str] = None

    @property
    def label(self) -> str:
        return f"{self.system}/seed {self.seed}/alpha {self.alpha}"


@dataclass
class BenchmarkReport:
    """Per-run rows, the aggregate table and the mean convergence curves."""
    runs: pd.DataFrame
    table: pd.DataFrame
    curves: pd.DataFrame
    suite: BenchmarkSuite
    cells: List[BenchmarkCell] = field(default_factory=list)

    @property
    def failed_cells(self) -> List[BenchmarkCell]:
        return [cell for cell in self.cells if cell.error]


def _cell_trajectories(cell: BenchmarkCell, suite: BenchmarkSuite):
    spec = sample_system_spec(
        cell.system,
        cell.seed,
        suite.initial_state_ranges,
        duration=suite.duration,
        sample_rate=suite.sample_rate,
    )
    truth = generate(spec, cell.seed)
    equations = (truth.analytic_x, truth.analytic_y) if truth.has_equations else None
    if suite.grid_size:
        tracks = synthesize_tracks(truth, suite.grid_size, seed=cell.seed)
        if suite.noise > 0:
            tracks = TrajectorySet(
                [add_noise(t, suite.noise, cell.seed + t.point_id) for t in tracks],
                grid_size=tracks.grid_size,
            )
        return tracks, equations
    return add_noise(truth.trajectory, suite.noise, cell.seed), equations


def _run_row(cell: BenchmarkCell, result: DiscoveryResult) -> Dict[str, Any]:
    return {
        "system": cell.system,
        "seed": cell.seed,
        "alpha": cell.alpha,
        "point_id": result.point_id,
        "ted": result.mean_ted,
        "ted_commutative": result.mean_ted_commutative,
        "test_mse": result.test_mse if not result.divergent else math.nan,
        "val_mse": result.mean_validation_mse,
        "divergent": result.divergent,
        "expr_x": to_string(result.f_x),
        "expr_y": to_string(result.f_y),
        "error": "",
    }


def _curve_rows(cell: BenchmarkCell, result: DiscoveryResult) -> List[Dict[str, Any]]:
    rows = []
    for axis in AXES:
        for row in result.convergence[axis].rows:
            rows.append({
                "system": cell.system,
                "seed": cell.seed,
                "alpha": cell.alpha,
                "point_id": result.point_id,
                "axis": axis,
                "iteration": row.iteration,
                "train_mse": row.best_train_mse,
                "val_mse": row.best_val_mse,
            })
    return rows


def run_cell(cell: BenchmarkCell, suite: BenchmarkSuite, bank: Optional[EquationBank]) -> BenchmarkCell:
    """Generate, split and discover for one cell; failures land in ``cell.error``."""
    search = suite.search.replace(alpha=cell.alpha, seed=cell.seed)
    pipeline = PipelineConfig(search, suite.pipeline.metric, suite.pipeline.band,
                              suite.pipeline.top_k_trajectories)
    try:
        data, equations = _cell_trajectories(cell, suite)
        if isinstance(data, TrajectorySet):
            results = discover_set(data, bank, pipeline, equations).results
        else:
            results = [discover(temporal_split(data), bank, pipeline, equations)]
    except CELL_ERRORS as e:
        logger.error(f"Benchmark cell {cell.label} failed: {e}")
        cell.error = f"{type(e).__name__}: {e}"
        return cell
    except Exception as e:
        logger.exception(f"Benchmark cell {cell.label} failed unexpectedly")
        cell.error = f"{type(e).__name__}: {e}"
        return cell
    for result in results:
        cell.rows.append(_run_row(cell, result))
        cell.curves.extend(_curve_rows(cell, result))
    logger.info(
        f"Benchmark cell {cell.label}: "
        f"{len(results)} trajectories"
    )
    return cell


def _run_cell_job(args) -> BenchmarkCell:
    return run_cell(*args)


def _failure_row(cell: BenchmarkCell) -> Dict[str, Any]:
    row = {column: math.nan for column in RUN_COLUMNS}
    row.update({
        "system": cell.system, "seed": cell.seed, "alpha": cell.alpha,
        "divergent": False, "expr_x": "", "expr_y": "", "error": cell.error,
    })
    return row


def runs_frame(cells: Sequence[BenchmarkCell]) -> pd.DataFrame:
    rows = []
    for cell in cells:
        rows.extend(cell.rows if not cell.error else [_failure_row(cell)])
    frame = pd.DataFrame.from_records(rows, columns=RUN_COLUMNS)
    frame["point_id"] = frame["point_id"].astype("Int64")
    return frame


def aggregate_table(runs: pd.DataFrame, systems: Sequence[str], alphas: Sequence[float]) -> pd.DataFrame:
    """Mean and population std of TED and test MSE per (system, alpha).

    ``runs`` counts completed, non-divergent trajectories; ``failed``
    counts failed cells and divergent trajectories. TED stays empty for
    systems without analytic equations.
    """
    records = []
    for system in systems:
        for alpha in alphas:
            group = runs[(runs["system"] == system) & (runs["alpha"] == alpha)]
            failed_mask = (group["error"].fillna("") != "") | group["divergent"].astype(bool)
            ok = group[~failed_mask]
            ted = ok["ted"].dropna()
            mse = ok["test_mse"].dropna()
            records.append({
                "system": system,
                "alpha": alpha,
                "runs": int(len(ok)),
                "ted_mean": float(ted.mean()) if len(ted) else math.nan,
                "ted_std": float(ted.std(ddof=0)) if len(ted) else math.nan,
                "mse_mean": float(mse.mean()) if len(mse) else math.nan,
                "mse_std": float(mse.std(ddof=0)) if len(mse) else math.nan,
                "failed": int(failed_mask.sum()),
            })
    return pd.DataFrame.from_records(records, columns=TABLE_COLUMNS)


def mean_curves(cells: Sequence[BenchmarkCell], alphas: Sequence[float]) -> pd.DataFrame:
    """Per-iteration train and validation MSE per alpha, averaged over systems, runs and axes."""
    rows = [row for cell in cells for row in cell.curves]
    if not rows:
        return pd.DataFrame(columns=CURVE_COLUMNS)
    frame = pd.DataFrame.from_records(rows)
    grouped = frame.groupby(["alpha", "iteration"], sort=True).agg(
        train_mse_mean=("train_mse", "mean"),
        val_mse_mean=("val_mse", "mean"),
    ).reset_index()
    order = {alpha: index for index, alpha in enumerate(alphas)}
    grouped["_order"] = grouped["alpha"].map(order)
    grouped = grouped.sort_values(["_order", "iteration"], kind="stable")
    return grouped.loc[:, CURVE_COLUMNS].reset_index(drop=True)


def run_benchmark(suite: BenchmarkSuite, bank: Optional[EquationBank]) -> BenchmarkReport:
    """Run every cell of ``suite`` and assemble the report.

    Cells run on a process pool when ``suite.workers > 1``; the report is
    identical either way. A failing cell is recorded and the suite goes on.
    """
    cells = suite.cells
    logger.info(
        f"Benchmark {suite.profile}: {len(suite.systems)} systems x {len(suite.alphas)} alphas "
        f"x {len(suite.seeds)} seeds on {suite.workers} workers"
    )
    jobs = [(cell, suite, bank) for cell in cells]
    if suite.workers > 1:
        with ProcessPoolExecutor(max_workers=suite.workers) as executor:
            finished = list(executor.map(_run_cell_job, jobs))
    else:
        finished = [_run_cell_job(job) for job in jobs]

    runs = runs_frame(finished)
    table = aggregate_table(runs, suite.systems, suite.alphas)
    curves = mean_curves(finished, suite.alphas)
    failed = sum(1 for cell in finished if cell.error)
    if failed:
        logger.warning(f"{failed} of {len(finished)} benchmark cells failed")
    return BenchmarkReport(runs, table, curves, suite, finished)


def ted_by_alpha(report: BenchmarkReport, system: str) -> Dict[float, float]:
    """Mean TED per alpha for one system, from the aggregate table."""
    rows = report.table[report.table["system"] == system]
    return {float(alpha): float(ted) for alpha, ted in zip(rows["alpha"], rows["ted_mean"])}


def val_mse_at(report: BenchmarkReport, iteration: int) -> Dict[float, float]:
    """Mean validation MSE per alpha at ``iteration``."""
    rows = report.curves[report.curves["iteration"] == iteration]
    return {float(alpha): float(value) for alpha, value in zip(rows["alpha"], rows["val_mse_mean"])}


def system_val_mse_at(report: BenchmarkReport, system: str, iteration: int) -> Dict[float, float]:
    """Mean validation MSE per alpha at ``iteration`` for one system."""
    rows = [
        row for cell in report.cells if cell.system == system
        for row in cell.curves if row["iteration"] == iteration
    ]
    if not rows:
        return {}
    frame = pd.DataFrame.from_records(rows)
    means = frame.groupby("alpha")["val_mse"].mean()
    return {float(alpha): float(value) for alpha, value in means.items()}

