# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Infix printer with minimal parenthesization.

``parse(to_string(e)) == e`` holds for every valid tree. Two details make
that work with the parser's negative-literal rule:

    - a negative constant prints as ``-2`` and is wrapped in parentheses
      whenever it is the base of ``^``;
    - ``neg`` applied to a non-negative constant prints as ``-(2)`` so it is
      not folded back into a literal.
"""

from .nodes import CONST, VAR, Expr

_SYMBOLS = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}

_PRECEDENCE = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}
_ATOM = 5


def format_number(value: float) -> str:
    """Shortest text that parses back to exactly ``value``."""
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(float(value))


def _precedence(e: Expr) -> int:
    if e.kind == CONST:
        return _PRECEDENCE["neg"] if e.value < 0 else _ATOM
    return _PRECEDENCE.get(e.kind, _ATOM)


def _wrap(e: Expr, needs_parens: bool) -> str:
    text = to_string(e)
    return f"({text})" if needs_parens else text


def to_string(e: Expr) -> str:
    """Render ``e`` as an infix string."""
    if e.kind == CONST:
        return format_number(e.value)
    if e.kind == VAR:
        return "t"
    if e.kind == "neg":
        child = e.children[0]
        if child.kind == CONST and child.value >= 0:
            return f"-({format_number(child.value)})"
        return "-" + _wrap(child, _precedence(child) < _PRECEDENCE["neg"])
    if len(e.children) == 1:
        return f"{e.kind}({to_string(e.children[0])})"

    left, right = e.children
    level = _PRECEDENCE[e.kind]
    if e.kind == "pow":
        left_text = _wrap(left, _precedence(left) <= level)
        right_text = _wrap(right, _precedence(right) < _PRECEDENCE["neg"])
    else:
        left_text = _wrap(left, _precedence(left) < level)
        right_text = _wrap(right, _precedence(right) <= level)
    return f"{left_text} {_SYMBOLS[e.kind]} {right_text}"
