# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Scored candidates and the fitness function."""

from dataclasses import dataclass
import math

import numpy as np
from numpy.typing import ArrayLike

from ..expr import Expr, complexity, evaluate_array, to_string

PENALTY_MSE = 1e12


def mean_squared_error(
    e: Expr, t_values: ArrayLike, target: ArrayLike, protected: bool = True
) -> float:
    """MSE of ``e`` against ``target``; any non-finite prediction gives ``PENALTY_MSE``."""
    prediction = evaluate_array(e, t_values, protected=protected)
    if not np.all(np.isfinite(prediction)):
        return PENALTY_MSE
    with np.errstate(all="ignore"):
        value = float(np.mean((prediction - np.asarray(target, dtype=float)) ** 2))
    if not math.isfinite(value) or value > PENALTY_MSE:
        return PENALTY_MSE
    return value


def selection_score(mse: float, size: int, parsimony: float) -> float:
    return mse * (1.0 + parsimony * size)


@dataclass(frozen=True)
class Candidate:
    """A population member.

    Attributes:
        expr: Expression with its constants already fitted
        mse: Train MSE, or ``PENALTY_MSE``
        complexity: Node count of ``expr``
        age: Iteration the candidate was created in (0 for the initial population)
        score: Selection score ``mse * (1 + parsimony * complexity)``
    """
    expr: Expr
    mse: float
    complexity: int
    age: int
    score: float

    @property
    def expression(self) -> str:
        return to_string(self.expr)

    @property
    def is_penalized(self) -> bool:
        return self.mse >= PENALTY_MSE


def make_candidate(
    e: Expr, t_values: ArrayLike, target: ArrayLike, parsimony: float, age: int = 0
) -> Candidate:
    mse = mean_squared_error(e, t_values, target)
    size = complexity(e)
    return Candidate(e, mse, size, age, selection_score(mse, size, parsimony))


def fitness(candidate: Candidate, t_values: ArrayLike, target: ArrayLike) -> float:
    """Train MSE of an already fitted candidate."""
    return mean_squared_error(candidate.expr, t_values, target)
