# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Vectorised evaluation of expression trees.

With protected operators on (the search default):

    log(u)   = log(|u|), and log(0) = LOG_ZERO_SENTINEL
    sqrt(u)  = sqrt(|u|)
    u / 0    = NaN at that point only
    tan(u)   = NaN where |cos(u)| < TAN_POLE_TOLERANCE

With protected operators off, plain IEEE semantics apply and NaN/inf
propagate. Non-finite results are data; nothing here raises for them.
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .nodes import CONST, VAR, Expr

LOG_ZERO_SENTINEL = -1e12
TAN_POLE_TOLERANCE = 1e-12

ArrayLike = Union[Sequence[float], np.ndarray]


class EvalContextError(ValueError):
    """Raised for an empty or non-increasing time grid."""
    pass


@dataclass(frozen=True, eq=False)
class EvalContext:
    """Time grid plus the protected-operators flag.

    Attributes:
        t_values: Strictly increasing time points in seconds
        protected: Use protected operators
    """
    t_values: np.ndarray
    protected: bool = True

    def __post_init__(self):
        t_values = np.array(self.t_values, dtype=float)
        if t_values.ndim != 1 or t_values.size == 0:
            raise EvalContextError("t_values must be a non-empty 1-D sequence")
        if t_values.size > 1 and not np.all(np.diff(t_values) > 0):
            raise EvalContextError("t_values must be strictly increasing")
        t_values.setflags(write=False)
        object.__setattr__(self, "t_values", t_values)


def _protected_log(u: np.ndarray) -> np.ndarray:
    magnitude = np.abs(u)
    out = np.log(magnitude)
    return np.where(magnitude == 0.0, LOG_ZERO_SENTINEL, out)


def _protected_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.divide(a, b)
    return np.where(b == 0.0, np.nan, out)


def _protected_tan(u: np.ndarray) -> np.ndarray:
    out = np.tan(u)
    return np.where(np.abs(np.cos(u)) < TAN_POLE_TOLERANCE, np.nan, out)


_UNARY = {
    "cos": np.cos,
    "sin": np.sin,
    "exp": np.exp,
    "log": np.log,
    "tan": np.tan,
    "sqrt": np.sqrt,
    "neg": np.negative,
}

_PROTECTED_UNARY = dict(
    _UNARY,
    log=_protected_log,
    sqrt=lambda u: np.sqrt(np.abs(u)),
    tan=_protected_tan,
)

_BINARY = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
    "div": np.divide,
    "pow": np.power,
}

_PROTECTED_BINARY = dict(_BINARY, div=_protected_div)


def _eval(e: Expr, t: np.ndarray, protected: bool) -> np.ndarray:
    if e.kind == CONST:
        return np.full(t.shape, e.value)
    if e.kind == VAR:
        return t.copy()
    if len(e.children) == 1:
        table = _PROTECTED_UNARY if protected else _UNARY
        return table[e.kind](_eval(e.children[0], t, protected))
    table = _PROTECTED_BINARY if protected else _BINARY
    left = _eval(e.children[0], t, protected)
    right = _eval(e.children[1], t, protected)
    return table[e.kind](left, right)


def evaluate_array(e: Expr, t: ArrayLike, protected: bool = True) -> np.ndarray:
    """Evaluate ``e`` on a raw time array without validating the grid."""
    t = np.asarray(t, dtype=float)
    with np.errstate(all="ignore"):
        return np.asarray(_eval(e, t, protected), dtype=float)


def evaluate(e: Expr, ctx: EvalContext) -> np.ndarray:
    """Evaluate ``e`` at every time point of ``ctx``.

    Returns:
        Array with one value per entry of ``ctx.t_values``
    """
    return evaluate_array(e, ctx.t_values, ctx.protected)
