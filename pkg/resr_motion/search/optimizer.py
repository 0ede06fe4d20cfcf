# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Constant fitting with the Nelder-Mead simplex.

Restarts alternate between polishing the best point found so far (a fresh
simplex around it) and starting from a log-normally perturbed copy of it.
The returned expression never has a higher train MSE than the input.
"""

from typing import Optional, Tuple
import logging

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize

from ..expr import Expr, constants, with_constants
from .candidate import PENALTY_MSE, mean_squared_error

logger = logging.getLogger(__name__)

XATOL = 1e-12
FATOL = 1e-16
PERTURBATION_SIGMA = 0.5


def _objective(e: Expr, t: np.ndarray, y: np.ndarray):
    def mse(values: np.ndarray) -> float:
        if not np.all(np.isfinite(values)):
            return PENALTY_MSE
        return mean_squared_error(with_constants(e, values), t, y)
    return mse


def optimize_constants(
    e: Expr,
    t_values: ArrayLike,
    target: ArrayLike,
    restarts: int = 8,
    evaluations: int = 100,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[Expr, float]:
    """Fit the constants of ``e`` to ``target``.

    Args:
        e: Expression whose constants are the starting point
        t_values: Sample times
        target: Observed values
        restarts: Number of simplex runs
        evaluations: Function evaluations per run
        rng: Source of perturbations for odd-numbered restarts

    Returns:
        ``(expression, train MSE)``; ``e`` itself when nothing improved
    """
    t = np.asarray(t_values, dtype=float)
    y = np.asarray(target, dtype=float)
    start = np.array(constants(e), dtype=float)
    initial_mse = mean_squared_error(e, t, y)
    if start.size == 0 or initial_mse == 0.0:
        return e, initial_mse
    if rng is None:
        rng = np.random.default_rng(0)

    objective = _objective(e, t, y)
    best_x, best_f = start, initial_mse
    for restart in range(restarts):
        if restart % 2 == 0:
            x0 = best_x
        else:
            signs = np.where(rng.random(best_x.size) < 0.1, -1.0, 1.0)
            x0 = best_x * signs * rng.lognormal(0.0, PERTURBATION_SIGMA, best_x.size)
            x0 = np.where(x0 == 0.0, rng.normal(0.0, 1.0, best_x.size), x0)
        result = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxfev": evaluations, "xatol": XATOL, "fatol": FATOL},
        )
        value = float(result.fun)
        if np.all(np.isfinite(result.x)) and value < best_f:
            best_x, best_f = np.array(result.x, dtype=float), value
        if best_f == 0.0:
            break

    if best_f < initial_mse:
        fitted = with_constants(e, best_x)
        # reported MSE is that of the rebuilt tree
        fitted_mse = mean_squared_error(fitted, t, y)
        if fitted_mse <= initial_mse:
            return fitted, fitted_mse
    return e, initial_mse
