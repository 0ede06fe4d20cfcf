# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Island-model steady-state evolution.

Each population owns a random generator spawned from the master seed and
evolves independently for one iteration at a time; at every iteration
boundary the populations' members are merged into one shared Pareto front
in population order. Results therefore do not depend on the number of
worker processes.
"""

from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np
from numpy.typing import ArrayLike

from ..expr import Expr, complexity, simplify, to_string
from .candidate import Candidate, make_candidate, mean_squared_error
from .config import SearchConfig, SearchError
from .front import ConvergenceLog, ConvergenceRow, ParetoFront
from .operators import crossover, mutate, random_tree, seed_members
from .optimizer import optimize_constants

logger = logging.getLogger(__name__)

MIN_TRAIN_POINTS = 10


@dataclass
class Population:
    """One island: its members and its private random stream."""
    index: int
    members: List[Candidate]
    rng: np.random.Generator
    refitted: set = field(default_factory=set)

    def best(self) -> Candidate:
        return min(self.members, key=lambda c: (c.score, c.complexity))


@dataclass(frozen=True, eq=False)
class TrainingData:
    t: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))


def population_streams(config: SearchConfig) -> Tuple[List[np.random.Generator], np.random.Generator]:
    """One generator per population plus one for fitting the seeds."""
    children = np.random.SeedSequence(config.seed).spawn(config.n_populations + 1)
    generators = [np.random.default_rng(child) for child in children]
    return generators[:-1], generators[-1]


def prepare_seeds(retrieved: Sequence[Expr], config: SearchConfig) -> List[Expr]:
    """Simplified retrieved expressions that fit the complexity cap, rank order kept."""
    seeds = []
    for e in retrieved:
        reduced = simplify(e)
        if complexity(reduced) <= config.max_complexity:
            seeds.append(reduced)
        else:
            logger.debug(f"Dropping seed {to_string(e)}: complexity {complexity(reduced)}")
    return seeds


def initialize_population(
    config: SearchConfig, retrieved: Sequence[Expr], rng: np.random.Generator
) -> List[Expr]:
    """Initial expressions of one population.

    The first ``round(alpha * population_size)`` members are retrieved
    expressions in rank order, cycling when there are fewer of them; the
    rest are random grown trees.
    """
    seeds = seed_members(retrieved, config.n_seed)
    randoms = [random_tree(rng, config) for _ in range(config.population_size - len(seeds))]
    return seeds + randoms


def _fit(
    e: Expr, data: TrainingData, config: SearchConfig, rng: np.random.Generator, full: bool
) -> Expr:
    if full:
        fitted, _ = optimize_constants(
            e, data.t, data.y, config.optimizer_restarts, config.optimizer_evaluations, rng
        )
    else:
        fitted, _ = optimize_constants(e, data.t, data.y, 1, config.offspring_evaluations, rng)
    return fitted


def fit_seeds(
    seeds: Sequence[Expr], data: TrainingData, config: SearchConfig, rng: np.random.Generator
) -> List[Expr]:
    """Full constant refit, once per distinct seed expression."""
    fitted: Dict[Expr, Expr] = {}
    for e in seeds:
        if e not in fitted:
            fitted[e] = _fit(e, data, config, rng, full=True)
    return [fitted[e] for e in seeds]


def build_population(
    index: int,
    expressions: Sequence[Expr],
    data: TrainingData,
    config: SearchConfig,
    rng: np.random.Generator,
    refitted: Sequence[Expr] = (),
) -> Population:
    members = [make_candidate(e, data.t, data.y, config.parsimony, age=0) for e in expressions]
    return Population(index, members, rng, set(refitted))


def _tournament(population: Population, size: int) -> Tuple[int, int]:
    """Indices of the tournament winner and loser."""
    count = len(population.members)
    picks = population.rng.choice(count, size=min(size, count), replace=False)
    ranked = sorted(picks, key=lambda i: (population.members[i].score, population.members[i].complexity, i))
    return int(ranked[0]), int(ranked[-1])


def _refit_winner(
    population: Population, index: int, data: TrainingData, config: SearchConfig
) -> Candidate:
    """Full constant fit of a tournament winner, once per distinct expression."""
    member = population.members[index]
    if member.expr in population.refitted:
        return member
    refit = _fit(member.expr, data, config, population.rng, full=True)
    population.refitted.add(refit)
    candidate = make_candidate(refit, data.t, data.y, config.parsimony, age=member.age)
    population.members[index] = candidate
    return candidate


def step_population(
    population: Population, data: TrainingData, config: SearchConfig, iteration: int
) -> Population:
    """One steady-state pass: ``population_size`` offspring, each replacing a tournament loser.

    The winner of every tournament gets a full constant fit before it breeds;
    each offspring gets the capped fit with probability ``optimize_probability``.
    """
    rng = population.rng
    for _ in range(config.population_size):
        winner, loser = _tournament(population, config.tournament_size)
        child = _refit_winner(population, winner, data, config).expr
        if rng.random() < config.crossover_probability:
            mate, _ = _tournament(population, config.tournament_size)
            child = crossover(child, population.members[mate].expr, rng, config)
        if rng.random() < config.mutation_probability:
            child = mutate(child, rng, config)
        if rng.random() < config.optimize_probability:
            child = _fit(child, data, config, rng, full=False)
        population.members[loser] = make_candidate(
            child, data.t, data.y, config.parsimony, age=iteration
        )

    # only expressions still in the population stay marked as refit
    population.refitted.intersection_update(member.expr for member in population.members)
    return population


def _step_job(args) -> Population:
    return step_population(*args)


@dataclass
class SearchResult:
    front: ParetoFront
    log: ConvergenceLog
    populations: List[Population] = field(default_factory=list)

    def __iter__(self):
        return iter((self.front, self.log))


def _log_row(
    iteration: int,
    front: ParetoFront,
    validation: Optional[TrainingData],
) -> ConvergenceRow:
    best = front.best()
    if validation is not None and validation.t.size:
        selected = front.select_by_validation(validation.t, validation.y)
        best_val = mean_squared_error(selected.expr, validation.t, validation.y)
    else:
        selected, best_val = best, float("nan")
    return ConvergenceRow(
        iteration=iteration,
        best_train_mse=best.mse,
        best_val_mse=best_val,
        best_expr=to_string(selected.expr),
        front_size=len(front),
    )


def evolve(
    config: SearchConfig,
    t_train: ArrayLike,
    y_train: ArrayLike,
    retrieved: Sequence[Expr] = (),
    t_val: Optional[ArrayLike] = None,
    y_val: Optional[ArrayLike] = None,
    executor: Optional[Executor] = None,
) -> SearchResult:
    """Run the search on one series.

    Args:
        config: Search settings, including the master seed
        t_train: Training sample times (at least 10)
        y_train: Training values
        retrieved: Retrieved expressions, best first; empty for the plain baseline
        t_val: Validation times, used for the log's validation column
        y_val: Validation values
        executor: Pool to run populations on; one is created when
            ``config.workers > 1`` and none is given

    Returns:
        The shared Pareto front, the convergence log and the final populations

    Raises:
        SearchError: If there are fewer than 10 training points
    """
    data = TrainingData(t_train, y_train)
    if data.t.size < MIN_TRAIN_POINTS:
        raise SearchError(f"need at least {MIN_TRAIN_POINTS} training points, got {data.t.size}")
    if data.t.shape != data.y.shape:
        raise SearchError("t_train and y_train differ in length")
    validation = None
    if t_val is not None and y_val is not None:
        validation = TrainingData(t_val, y_val)

    streams, seed_rng = population_streams(config)
    seeds = prepare_seeds(retrieved, config)
    if config.n_seed > 0 and not seeds:
        logger.warning(
            f"alpha={config.alpha} but no usable retrieved equations; "
            "initializing all members randomly"
        )
    seeds = fit_seeds(seeds, data, config, seed_rng) if config.n_seed > 0 else []

    populations = []
    for index, rng in enumerate(streams):
        expressions = initialize_population(config, seeds, rng)
        populations.append(build_population(index, expressions, data, config, rng, seeds))

    front = ParetoFront()
    for population in populations:
        front.update(population.members)

    log = ConvergenceLog()
    own_executor = None
    if executor is None and config.workers > 1:
        own_executor = ProcessPoolExecutor(max_workers=config.workers)
        executor = own_executor
    try:
        for iteration in range(1, config.n_iterations + 1):
            jobs = [(population, data, config, iteration) for population in populations]
            if executor is not None:
                populations = list(executor.map(_step_job, jobs))
            else:
                populations = [_step_job(job) for job in jobs]
            for population in populations:
                front.update(population.members)
            row = _log_row(iteration, front, validation)
            log.append(row)
            if iteration % config.log_every == 0 or iteration == config.n_iterations:
                logger.info(
                    f"iteration {iteration}/{config.n_iterations}: "
                    f"train MSE {row.best_train_mse:.6g}, val MSE {row.best_val_mse:.6g}, "
                    f"front {row.front_size}, best {row.best_expr}"
                )
    finally:
        if own_executor is not None:
            own_executor.shutdown()

    return SearchResult(front, log, populations)
