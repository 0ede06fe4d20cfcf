# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Pareto front bookkeeping and the per-iteration convergence log."""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional
import math

from numpy.typing import ArrayLike

from .candidate import Candidate, mean_squared_error


class ParetoFront:
    """Best candidate seen at each complexity.

    ``update`` keeps, per complexity, the lowest train MSE ever offered, so
    the best MSE at any complexity never gets worse. ``members`` returns the
    non-dominated subset: complexity strictly increasing, MSE strictly
    decreasing.
    """

    def __init__(self, candidates: Iterable[Candidate] = ()):
        self._best: Dict[int, Candidate] = {}
        self.update(candidates)

    def update(self, candidates: Iterable[Candidate]) -> int:
        """Offer candidates; returns how many levels improved."""
        improved = 0
        for candidate in candidates:
            current = self._best.get(candidate.complexity)
            if current is None or candidate.mse < current.mse:
                self._best[candidate.complexity] = candidate
                improved += 1
        return improved

    def offer(self, candidate: Candidate) -> bool:
        return self.update([candidate]) > 0

    def members(self) -> List[Candidate]:
        front = []
        for size in sorted(self._best):
            candidate = self._best[size]
            if not front or candidate.mse < front[-1].mse:
                front.append(candidate)
        return front

    def levels(self) -> Dict[int, Candidate]:
        return dict(self._best)

    def __len__(self) -> int:
        return len(self.members())

    def __bool__(self) -> bool:
        return bool(self._best)

    def best(self) -> Optional[Candidate]:
        """Lowest train MSE, ties to the simpler candidate."""
        members = self.members()
        return members[-1] if members else None

    def best_at(self, max_complexity: int) -> Optional[Candidate]:
        eligible = [c for c in self.members() if c.complexity <= max_complexity]
        return eligible[-1] if eligible else None

    def select_by_validation(self, t_values: ArrayLike, target: ArrayLike) -> Optional[Candidate]:
        """Front member with the lowest validation MSE, ties to lower complexity."""
        best, best_mse = None, math.inf
        for candidate in self.members():
            mse = mean_squared_error(candidate.expr, t_values, target)
            if best is None or mse < best_mse:
                best, best_mse = candidate, mse
        return best

    @property
    def all_penalized(self) -> bool:
        return bool(self._best) and all(c.is_penalized for c in self._best.values())


@dataclass
class ConvergenceRow:
    iteration: int
    best_train_mse: float
    best_val_mse: float
    best_expr: str
    front_size: int


@dataclass
class ConvergenceLog:
    """One row per iteration, iterations numbered from 1."""
    rows: List[ConvergenceRow] = field(default_factory=list)

    def append(self, row: ConvergenceRow) -> None:
        self.rows.append(row)

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> List:
        return [getattr(row, name) for row in self.rows]

    def at(self, iteration: int) -> ConvergenceRow:
        return self.rows[iteration - 1]

    def to_records(self) -> List[dict]:
        return [
            {
                "iteration": row.iteration,
                "best_train_mse": row.best_train_mse,
                "best_val_mse": row.best_val_mse,
                "best_expr": row.best_expr,
                "front_size": row.front_size,
            }
            for row in self.rows
        ]

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "ConvergenceLog":
        return cls([
            ConvergenceRow(
                int(record["iteration"]),
                _float(record["best_train_mse"]),
                _float(record["best_val_mse"]),
                str(record["best_expr"]),
                int(record.get("front_size", 0)),
            )
            for record in records
        ])


def _float(value) -> float:
    return math.nan if value is None else float(value)
