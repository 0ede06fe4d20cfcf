# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Random trees, mutation and crossover.

All operators take and return expressions and draw randomness only from
the generator passed in. Results never exceed the configured complexity:
an oversize result is retried a few times and the parent is returned if
every attempt is too large.
"""

from typing import Callable, List, Optional, Sequence
import logging
import math

import numpy as np

from ..expr import (
    CONST,
    UNARY_OPS,
    VAR,
    Expr,
    Path,
    binary,
    complexity,
    const,
    iter_nodes,
    replace_at,
    simplify,
    subtree_at,
    unary,
    var,
)
from .config import MUTATION_KINDS, SearchConfig

logger = logging.getLogger(__name__)

CONSTANT_LOW = -10.0
CONSTANT_HIGH = 10.0
EXPONENT_LOW = 0.5
EXPONENT_HIGH = 3.0
TERMINAL_PROBABILITY = 0.3
VARIABLE_PROBABILITY = 0.5
PERTURB_SIGMA = 0.3
SUBTREE_DEPTH = 3
MAX_ATTEMPTS = 5


def _random_constant(rng: np.random.Generator) -> Expr:
    return const(rng.uniform(CONSTANT_LOW, CONSTANT_HIGH))


def random_terminal(rng: np.random.Generator) -> Expr:
    if rng.random() < VARIABLE_PROBABILITY:
        return var()
    return _random_constant(rng)


def grow(
    rng: np.random.Generator,
    max_depth: int,
    unary_ops: Sequence[str],
    binary_ops: Sequence[str],
) -> Expr:
    """Grow-method random tree of depth at most ``max_depth``.

    ``pow`` always gets a constant exponent in [0.5, 3].
    """
    operators = list(unary_ops) + list(binary_ops)
    if max_depth <= 1 or not operators or rng.random() < TERMINAL_PROBABILITY:
        return random_terminal(rng)
    op = operators[rng.integers(len(operators))]
    if op in unary_ops:
        return unary(op, grow(rng, max_depth - 1, unary_ops, binary_ops))
    if op == "pow":
        base = grow(rng, max_depth - 1, unary_ops, binary_ops)
        return binary("pow", base, const(rng.uniform(EXPONENT_LOW, EXPONENT_HIGH)))
    left = grow(rng, max_depth - 1, unary_ops, binary_ops)
    right = grow(rng, max_depth - 1, unary_ops, binary_ops)
    return binary(op, left, right)


def random_tree(rng: np.random.Generator, config: SearchConfig, max_depth: Optional[int] = None) -> Expr:
    """A grown tree that fits within ``config.max_complexity``."""
    depth = config.max_depth if max_depth is None else max_depth
    while True:
        tree = grow(rng, depth, config.unary_operators, config.binary_operators)
        if complexity(tree) <= config.max_complexity:
            return tree


def _random_path(e: Expr, rng: np.random.Generator, predicate: Callable[[Expr], bool] = None) -> Optional[Path]:
    paths = [path for path, node in iter_nodes(e) if predicate is None or predicate(node)]
    if not paths:
        return None
    return paths[rng.integers(len(paths))]


def kind_swap(e: Expr, rng: np.random.Generator, config: SearchConfig) -> Expr:
    """Change one node's kind, keeping its arity."""
    path = _random_path(e, rng)
    node = subtree_at(e, path)
    if node.kind == CONST:
        return replace_at(e, path, var())
    if node.kind == VAR:
        return replace_at(e, path, _random_constant(rng))
    pool = config.unary_operators if node.kind in UNARY_OPS else config.binary_operators
    choices = [op for op in pool if op != node.kind]
    if not choices:
        return e
    op = choices[rng.integers(len(choices))]
    return replace_at(e, path, Expr(op, None, node.children))


def subtree_replace(e: Expr, rng: np.random.Generator, config: SearchConfig) -> Expr:
    path = _random_path(e, rng)
    return replace_at(e, path, random_tree(rng, config, SUBTREE_DEPTH))


def perturb_constant(e: Expr, rng: np.random.Generator, config: SearchConfig) -> Expr:
    """Multiply one constant by a log-normal factor, occasionally flipping its sign."""
    path = _random_path(e, rng, lambda node: node.kind == CONST)
    if path is None:
        return subtree_replace(e, rng, config)
    value = subtree_at(e, path).value
    for _ in range(MAX_ATTEMPTS):
        factor = rng.lognormal(0.0, PERTURB_SIGMA)
        sign = -1.0 if rng.random() < 0.1 else 1.0
        new_value = value * factor * sign if value != 0.0 else rng.normal(0.0, 1.0)
        if math.isfinite(new_value) and new_value != value:
            return replace_at(e, path, const(new_value))
    return e


def insert_unary(e: Expr, rng: np.random.Generator, config: SearchConfig) -> Expr:
    ops = config.unary_operators
    if not ops:
        return e
    path = _random_path(e, rng)
    op = ops[rng.integers(len(ops))]
    return replace_at(e, path, unary(op, subtree_at(e, path)))


def delete_unary(e: Expr, rng: np.random.Generator, config: Optional[SearchConfig] = None) -> Expr:
    """Replace a unary node by its child; unchanged when there is none."""
    path = _random_path(e, rng, lambda node: node.kind in UNARY_OPS)
    if path is None:
        return e
    return replace_at(e, path, subtree_at(e, path).children[0])


def simplify_mutation(e: Expr, rng: np.random.Generator, config: SearchConfig) -> Expr:
    return simplify(e)


MUTATIONS = {
    "kind_swap": kind_swap,
    "subtree": subtree_replace,
    "perturb_constant": perturb_constant,
    "insert_unary": insert_unary,
    "delete_unary": delete_unary,
    "simplify": simplify_mutation,
}


def choose_mutation(rng: np.random.Generator, config: SearchConfig) -> str:
    weights = np.array([config.mutation_weights.get(kind, 0.0) for kind in MUTATION_KINDS])
    return MUTATION_KINDS[rng.choice(len(MUTATION_KINDS), p=weights / weights.sum())]


def mutate(e: Expr, rng: np.random.Generator, config: SearchConfig, kind: Optional[str] = None) -> Expr:
    """Apply one weighted-random mutation, respecting ``config.max_complexity``.

    Args:
        e: Parent expression
        rng: Random generator
        config: Supplies operator set, weights and the complexity cap
        kind: Force a specific mutation instead of drawing one
    """
    for _ in range(MAX_ATTEMPTS):
        chosen = kind or choose_mutation(rng, config)
        child = MUTATIONS[chosen](e, rng, config)
        if complexity(child) <= config.max_complexity:
            return child
    return e


def crossover(a: Expr, b: Expr, rng: np.random.Generator, config: SearchConfig) -> Expr:
    """Replace a random subtree of ``a`` with a random subtree of ``b``."""
    for _ in range(MAX_ATTEMPTS):
        target = _random_path(a, rng)
        donor = subtree_at(b, _random_path(b, rng))
        child = replace_at(a, target, donor)
        if complexity(child) <= config.max_complexity:
            return child
    return a


def seed_members(retrieved: Sequence[Expr], n_seed: int) -> List[Expr]:
    """``n_seed`` expressions taken from ``retrieved`` in rank order, cycling."""
    if not retrieved or n_seed <= 0:
        return []
    return [retrieved[i % len(retrieved)] for i in range(n_seed)]
