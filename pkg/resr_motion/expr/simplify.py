# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Local simplification rules.

Rules are applied bottom-up, and the pass repeats until the tree stops
changing:

    constant folding      op(const, ...) -> const
    additive identity     u + 0, 0 + u, u - 0 -> u;  0 - u -> -u
    multiplicative        u * 1, 1 * u, u / 1, u ^ 1 -> u
    annihilation          u * 0, 0 * u -> 0;  u ^ 0 -> 1
    self subtraction      u - u -> 0 (syntactically identical u only)
    double negation       --u -> u

A constant subtree is folded only when the protected and unprotected
evaluations agree and are finite, so folding never changes the meaning of
an expression under either mode. The result never has more nodes than the
input.
"""

import math

import numpy as np

from .evaluate import evaluate_array
from .nodes import CONST, Expr, const, unary

_PROBE = np.array([1.0])


def _is_const(e: Expr, value: float = None) -> bool:
    if e.kind != CONST:
        return False
    return value is None or e.value == value


def _fold(e: Expr):
    protected = float(evaluate_array(e, _PROBE, protected=True)[0])
    raw = float(evaluate_array(e, _PROBE, protected=False)[0])
    if math.isfinite(protected) and protected == raw:
        return const(protected)
    return None


def _rewrite(e: Expr) -> Expr:
    if e.children and all(_is_const(child) for child in e.children):
        folded = _fold(e)
        if folded is not None:
            return folded

    if e.kind == "neg":
        (child,) = e.children
        if child.kind == "neg":
            return child.children[0]
        return e

    if len(e.children) != 2:
        return e

    left, right = e.children
    if e.kind == "add":
        if _is_const(right, 0.0):
            return left
        if _is_const(left, 0.0):
            return right
    elif e.kind == "sub":
        if _is_const(right, 0.0):
            return left
        if left == right:
            return const(0.0)
        if _is_const(left, 0.0):
            return _rewrite(unary("neg", right))
    elif e.kind == "mul":
        if _is_const(left, 0.0) or _is_const(right, 0.0):
            return const(0.0)
        if _is_const(right, 1.0):
            return left
        if _is_const(left, 1.0):
            return right
    elif e.kind == "div":
        if _is_const(right, 1.0):
            return left
    elif e.kind == "pow":
        if _is_const(right, 1.0):
            return left
        if _is_const(right, 0.0):
            return const(1.0)
    return e


def _simplify_pass(e: Expr) -> Expr:
    if not e.children:
        return e
    children = tuple(_simplify_pass(child) for child in e.children)
    return _rewrite(Expr(e.kind, None, children))


def simplify(e: Expr) -> Expr:
    """Return a simplified tree that evaluates identically on finite points."""
    current = _simplify_pass(e)
    while True:
        # a pass that changes the tree removes nodes
        reduced = _simplify_pass(current)
        if reduced == current:
            return current
        current = reduced
