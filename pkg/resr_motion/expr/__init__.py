# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Expression trees over the time variable ``t``.

Usage:
    from resr_motion.expr import parse, evaluate_array, complexity

    e = parse("0.5*cos(t + 3) + 100")
    complexity(e)                   # 8
    evaluate_array(e, [0.0])        # array([99.505...])
    str(e)                          # "0.5 * cos(t + 3) + 100"
"""

from .evaluate import (
    LOG_ZERO_SENTINEL,
    EvalContext,
    EvalContextError,
    evaluate,
    evaluate_array,
)
from .nodes import (
    BINARY_OPS,
    CONST,
    UNARY_OPS,
    VAR,
    Expr,
    ExprError,
    InvalidExprError,
    Path,
    binary,
    complexity,
    const,
    constants,
    depth,
    iter_nodes,
    replace_at,
    subtree_at,
    unary,
    uses_variable,
    var,
    with_constants,
)
from .parser import (
    FUNCTIONS,
    ArityMismatchError,
    EmptyInputError,
    LiteralOverflowError,
    ParseError,
    UnbalancedParenthesesError,
    UnexpectedTokenError,
    UnknownIdentifierError,
    parse,
    try_parse,
)
from .printer import format_number, to_string
from .simplify import simplify
from .ted import (
    canonicalize_commutative,
    commutative_ted_similarity,
    normalized_ted_similarity,
    tree_edit_distance,
)

nodes = iter_nodes

__all__ = [
    "LOG_ZERO_SENTINEL",
    "EvalContext",
    "EvalContextError",
    "evaluate",
    "evaluate_array",
    "BINARY_OPS",
    "CONST",
    "UNARY_OPS",
    "VAR",
    "Expr",
    "ExprError",
    "InvalidExprError",
    "Path",
    "binary",
    "complexity",
    "const",
    "constants",
    "depth",
    "iter_nodes",
    "nodes",
    "replace_at",
    "subtree_at",
    "unary",
    "uses_variable",
    "var",
    "with_constants",
    "FUNCTIONS",
    "ArityMismatchError",
    "EmptyInputError",
    "LiteralOverflowError",
    "ParseError",
    "UnbalancedParenthesesError",
    "UnexpectedTokenError",
    "UnknownIdentifierError",
    "parse",
    "try_parse",
    "format_number",
    "to_string",
    "simplify",
    "canonicalize_commutative",
    "commutative_ted_similarity",
    "normalized_ted_similarity",
    "tree_edit_distance",
]
