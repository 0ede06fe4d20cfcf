# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Expression tree nodes.

An ``Expr`` is an immutable tree over the single variable ``t``. Node kinds:

    const   real constant, 0 children
    t       the time variable, 0 children
    cos, sin, exp, log, tan, sqrt, neg   unary, 1 child
    add, sub, mul, div, pow              binary, 2 children

Trees are frozen dataclasses, so structural equality and hashing come for
free and a tree can be shared between worker processes without copying
concerns.

Paths address nodes for mutation and crossover: a path is a tuple of child
indices from the root, ``()`` being the root itself.
"""

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

CONST = "const"
VAR = "t"

UNARY_OPS = ("cos", "sin", "exp", "log", "tan", "sqrt", "neg")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")
COMMUTATIVE_OPS = ("add", "mul")

Path = Tuple[int, ...]


class ExprError(Exception):
    """Base exception for expression errors."""
    pass


class InvalidExprError(ExprError):
    """Raised when a node violates an arity, kind or value invariant."""
    pass


def arity(kind: str) -> int:
    """Number of children a node of ``kind`` must have."""
    if kind in (CONST, VAR):
        return 0
    if kind in UNARY_OPS:
        return 1
    if kind in BINARY_OPS:
        return 2
    raise InvalidExprError(f"Unknown node kind: {kind!r}")


@dataclass(frozen=True)
class Expr:
    """Immutable expression tree node.

    Attributes:
        kind: Node kind (see module docstring)
        value: Constant value, only for ``const`` nodes
        children: Sub-expressions, length given by ``arity(kind)``
    """
    kind: str
    value: Optional[float] = None
    children: Tuple["Expr", ...] = ()

    def __post_init__(self):
        expected = arity(self.kind)
        if len(self.children) != expected:
            raise InvalidExprError(
                f"{self.kind} takes {expected} children, got {len(self.children)}"
            )
        if self.kind == CONST:
            if self.value is None:
                raise InvalidExprError("const node requires a value")
            value = float(self.value)
            if math.isnan(value):
                raise InvalidExprError("NaN constants are not allowed")
            if math.isinf(value):
                raise InvalidExprError("constants must be finite")
            object.__setattr__(self, "value", value)
        elif self.value is not None:
            raise InvalidExprError(f"{self.kind} node cannot carry a value")

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_const(self) -> bool:
        return self.kind == CONST

    def __str__(self) -> str:
        from .printer import to_string
        return to_string(self)


def const(value: float) -> Expr:
    return Expr(CONST, float(value))


def var() -> Expr:
    return Expr(VAR)


def unary(op: str, child: Expr) -> Expr:
    if op not in UNARY_OPS:
        raise InvalidExprError(f"Not a unary operator: {op!r}")
    return Expr(op, None, (child,))


def binary(op: str, left: Expr, right: Expr) -> Expr:
    if op not in BINARY_OPS:
        raise InvalidExprError(f"Not a binary operator: {op!r}")
    return Expr(op, None, (left, right))


def complexity(e: Expr) -> int:
    """Total number of nodes in the tree."""
    return 1 + sum(complexity(child) for child in e.children)


def depth(e: Expr) -> int:
    """Depth of the tree, a single leaf having depth 1."""
    if not e.children:
        return 1
    return 1 + max(depth(child) for child in e.children)


def iter_nodes(e: Expr, path: Path = ()) -> Iterator[Tuple[Path, Expr]]:
    """Yield ``(path, node)`` pairs in pre-order."""
    yield path, e
    for index, child in enumerate(e.children):
        yield from iter_nodes(child, path + (index,))


def subtree_at(e: Expr, path: Path) -> Expr:
    node = e
    for index in path:
        node = node.children[index]
    return node


def replace_at(e: Expr, path: Path, replacement: Expr) -> Expr:
    """Return a copy of ``e`` with the node at ``path`` swapped for ``replacement``."""
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    children = list(e.children)
    children[head] = replace_at(children[head], rest, replacement)
    return Expr(e.kind, e.value, tuple(children))


def constants(e: Expr) -> List[float]:
    """Constant values in pre-order."""
    return [node.value for _, node in iter_nodes(e) if node.kind == CONST]


def with_constants(e: Expr, values: Sequence[float]) -> Expr:
    """Rebuild ``e`` with its constants replaced, in pre-order.

    Raises:
        InvalidExprError: If the number of values does not match
    """
    values = list(values)
    expected = len(constants(e))
    if len(values) != expected:
        raise InvalidExprError(
            f"Expression has {expected} constants, got {len(values)} values"
        )
    iterator = iter(values)

    def rebuild(node: Expr) -> Expr:
        if node.kind == CONST:
            return const(next(iterator))
        if not node.children:
            return node
        return Expr(node.kind, None, tuple(rebuild(child) for child in node.children))

    return rebuild(e)


def uses_variable(e: Expr) -> bool:
    return any(node.kind == VAR for _, node in iter_nodes(e))
