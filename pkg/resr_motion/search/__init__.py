# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Evolutionary symbolic regression with retrieval-seeded initialization.

Usage:
    from resr_motion.search import SearchConfig, evolve

    config = SearchConfig.from_mapping({"n_iterations": 20, "n_populations": 4})
    front, log = evolve(config, t_train, y_train, retrieved=[parse("cos(t)")])
"""

from .candidate import (
    PENALTY_MSE,
    Candidate,
    fitness,
    make_candidate,
    mean_squared_error,
    selection_score,
)
from .config import (
    ALLOWED_OPERATORS,
    DEFAULT_MUTATION_WEIGHTS,
    MUTATION_KINDS,
    SearchConfig,
    SearchConfigError,
    SearchError,
)
from .engine import (
    Population,
    SearchResult,
    TrainingData,
    build_population,
    evolve,
    fit_seeds,
    initialize_population,
    population_streams,
    prepare_seeds,
    step_population,
)
from .front import ConvergenceLog, ConvergenceRow, ParetoFront
from .operators import (
    MUTATIONS,
    crossover,
    delete_unary,
    grow,
    insert_unary,
    kind_swap,
    mutate,
    perturb_constant,
    random_tree,
    seed_members,
    subtree_replace,
)
from .optimizer import optimize_constants

__all__ = [
    "PENALTY_MSE",
    "Candidate",
    "fitness",
    "make_candidate",
    "mean_squared_error",
    "selection_score",
    "ALLOWED_OPERATORS",
    "DEFAULT_MUTATION_WEIGHTS",
    "MUTATION_KINDS",
    "SearchConfig",
    "SearchConfigError",
    "SearchError",
    "Population",
    "SearchResult",
    "TrainingData",
    "build_population",
    "evolve",
    "fit_seeds",
    "initialize_population",
    "population_streams",
    "prepare_seeds",
    "step_population",
    "ConvergenceLog",
    "ConvergenceRow",
    "ParetoFront",
    "MUTATIONS",
    "crossover",
    "delete_unary",
    "grow",
    "insert_unary",
    "kind_swap",
    "mutate",
    "perturb_constant",
    "random_tree",
    "seed_members",
    "subtree_replace",
    "optimize_constants",
]
