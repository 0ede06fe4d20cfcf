# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Search configuration.

``SearchConfig.from_mapping`` validates the ``search`` section of a run
configuration and rejects unknown keys.
"""

from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, Mapping, Optional, Tuple

from ..expr import BINARY_OPS, UNARY_OPS

ALLOWED_OPERATORS = tuple(op for op in BINARY_OPS + UNARY_OPS if op != "neg")

MUTATION_KINDS = (
    "kind_swap",
    "subtree",
    "perturb_constant",
    "insert_unary",
    "delete_unary",
    "simplify",
)

DEFAULT_MUTATION_WEIGHTS = {
    "kind_swap": 1.0,
    "subtree": 1.0,
    "perturb_constant": 2.0,
    "insert_unary": 0.5,
    "delete_unary": 0.5,
    "simplify": 0.5,
}

MIGRATION_MODES = ("front",)


class SearchError(Exception):
    """Base exception for the evolutionary search."""
    pass


class SearchConfigError(SearchError):
    """Raised when a search configuration value is invalid."""
    pass


@dataclass(frozen=True)
class SearchConfig:
    """Budgets and operator settings for one search.

    An iteration is one steady-state pass that produces ``population_size``
    offspring in every population.
    """
    n_iterations: int = 100
    n_populations: int = 30
    population_size: int = 30
    alpha: float = 0.75
    top_k_retrieval: int = 10
    operators: Tuple[str, ...] = ALLOWED_OPERATORS
    max_complexity: int = 30
    max_depth: int = 5
    parsimony: float = 1e-3
    tournament_size: int = 5
    mutation_weights: Dict[str, float] = field(
        default_factory=lambda: dict(DEFAULT_MUTATION_WEIGHTS)
    )
    crossover_probability: float = 0.2
    mutation_probability: float = 0.9
    optimize_probability: float = 1.0
    optimizer_restarts: int = 8
    optimizer_evaluations: int = 100
    offspring_evaluations: int = 30
    migration: str = "front"
    workers: int = 1
    log_every: int = 10
    seed: Optional[int] = 0

    def __post_init__(self):
        object.__setattr__(self, "operators", tuple(self.operators))
        object.__setattr__(self, "mutation_weights", dict(self.mutation_weights))
        self.validate()

    def validate(self) -> None:
        positive = (
            "n_iterations", "n_populations", "population_size", "top_k_retrieval",
            "max_complexity", "max_depth", "tournament_size", "optimizer_restarts",
            "optimizer_evaluations", "offspring_evaluations", "workers", "log_every",
        )
        for name in positive:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise SearchConfigError(f"{name} must be a positive integer, got {value!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise SearchConfigError(f"alpha must lie in [0, 1], got {self.alpha}")
        for name in ("crossover_probability", "mutation_probability", "optimize_probability"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise SearchConfigError(f"{name} must lie in [0, 1], got {value}")
        if self.parsimony < 0:
            raise SearchConfigError(f"parsimony must be non-negative, got {self.parsimony}")
        if not self.operators:
            raise SearchConfigError("operators must not be empty")
        unknown = [op for op in self.operators if op not in ALLOWED_OPERATORS]
        if unknown:
            raise SearchConfigError(
                f"Unsupported operators {unknown}; allowed: {list(ALLOWED_OPERATORS)}"
            )
        if self.max_complexity < 3:
            raise SearchConfigError("max_complexity must be at least 3")
        bad_kinds = [kind for kind in self.mutation_weights if kind not in MUTATION_KINDS]
        if bad_kinds:
            raise SearchConfigError(f"Unknown mutation kinds {bad_kinds}")
        if any(weight < 0 for weight in self.mutation_weights.values()):
            raise SearchConfigError("mutation weights must be non-negative")
        if sum(self.mutation_weights.values()) <= 0:
            raise SearchConfigError("at least one mutation weight must be positive")
        if self.migration not in MIGRATION_MODES:
            raise SearchConfigError(
                f"migration must be one of {MIGRATION_MODES}, got {self.migration!r}"
            )

    @property
    def n_seed(self) -> int:
        """Seeded members per population, ``round(alpha * population_size)``."""
        return int(round(self.alpha * self.population_size))

    @property
    def unary_operators(self) -> Tuple[str, ...]:
        return tuple(op for op in self.operators if op in UNARY_OPS)

    @property
    def binary_operators(self) -> Tuple[str, ...]:
        return tuple(op for op in self.operators if op in BINARY_OPS)

    @classmethod
    def from_mapping(cls, mapping: Optional[Mapping[str, Any]] = None, **overrides) -> "SearchConfig":
        """Build a config from a plain mapping, e.g. the ``search`` config section.

        Raises:
            SearchConfigError: On unknown keys or invalid values
        """
        values = dict(mapping or {})
        values.update({key: value for key, value in overrides.items() if value is not None})
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise SearchConfigError(f"Unknown search settings: {unknown}")
        if "mutation_weights" in values:
            weights = dict(DEFAULT_MUTATION_WEIGHTS)
            weights.update(values["mutation_weights"] or {})
            values["mutation_weights"] = weights
        for name in ("alpha", "parsimony", "crossover_probability",
                     "mutation_probability", "optimize_probability"):
            if name in values:
                try:
                    values[name] = float(values[name])
                except (TypeError, ValueError):
                    raise SearchConfigError(f"{name} must be a number, got {values[name]!r}")
        try:
            return cls(**values)
        except TypeError as e:
            raise SearchConfigError(str(e))

    def replace(self, **changes) -> "SearchConfig":
        return SearchConfig.from_mapping(self.to_dict(), **changes)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["operators"] = list(self.operators)
        return data
