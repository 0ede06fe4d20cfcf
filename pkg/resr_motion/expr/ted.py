# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tree edit distance between expression trees.

Ordered-tree edit distance with unit insert, delete and relabel costs,
computed with the Zhang-Shasha keyroot dynamic program. Node labels are the
node kinds. Every numeric constant shares the label ``const``, and
constant values never count as edits.

The commutative variant sorts the operands of ``add`` and ``mul`` into a
canonical order first, so ``t + 1`` and ``1 + t`` compare as equal.
"""

from typing import List, Tuple

from .nodes import COMMUTATIVE_OPS, CONST, Expr, complexity
from .printer import to_string


def node_label(e: Expr) -> str:
    return CONST if e.kind == CONST else e.kind


class _AnnotatedTree:
    """Post-order labels, leftmost-leaf indices and keyroots of a tree."""

    def __init__(self, root: Expr):
        self.labels: List[str] = []
        self.leftmost: List[int] = []
        self._walk(root)

        seen = set()
        keyroots = []
        for index in range(len(self.labels) - 1, -1, -1):
            if self.leftmost[index] not in seen:
                seen.add(self.leftmost[index])
                keyroots.append(index)
        self.keyroots = sorted(keyroots)

    def _walk(self, node: Expr) -> int:
        first_leaf = None
        for child in node.children:
            child_index = self._walk(child)
            if first_leaf is None:
                first_leaf = self.leftmost[child_index]
        self.labels.append(node_label(node))
        index = len(self.labels) - 1
        self.leftmost.append(index if first_leaf is None else first_leaf)
        return index


def tree_edit_distance(a: Expr, b: Expr) -> int:
    """Minimum number of node edits turning ``a`` into ``b``."""
    ta = _AnnotatedTree(a)
    tb = _AnnotatedTree(b)
    la, lb = ta.leftmost, tb.leftmost
    treedists = [[0] * len(tb.labels) for _ in ta.labels]

    for i in ta.keyroots:
        for j in tb.keyroots:
            li, lj = la[i], lb[j]
            rows = i - li + 2
            cols = j - lj + 2
            forest = [[0] * cols for _ in range(rows)]
            for x in range(1, rows):
                forest[x][0] = forest[x - 1][0] + 1
            for y in range(1, cols):
                forest[0][y] = forest[0][y - 1] + 1

            for x in range(1, rows):
                for y in range(1, cols):
                    ia = li + x - 1
                    jb = lj + y - 1
                    if la[ia] == li and lb[jb] == lj:
                        relabel = 0 if ta.labels[ia] == tb.labels[jb] else 1
                        forest[x][y] = min(
                            forest[x - 1][y] + 1,
                            forest[x][y - 1] + 1,
                            forest[x - 1][y - 1] + relabel,
                        )
                        treedists[ia][jb] = forest[x][y]
                    else:
                        p = la[ia] - li
                        q = lb[jb] - lj
                        forest[x][y] = min(
                            forest[x - 1][y] + 1,
                            forest[x][y - 1] + 1,
                            forest[p][q] + treedists[ia][jb],
                        )

    return treedists[-1][-1]


def normalized_ted_similarity(a: Expr, b: Expr) -> float:
    """``1 - TED / max(size)``, clamped to [0, 1]."""
    largest = max(complexity(a), complexity(b))
    similarity = 1.0 - tree_edit_distance(a, b) / largest
    return min(1.0, max(0.0, similarity))


def _shape_key(e: Expr) -> str:
    if not e.children:
        return node_label(e)
    return f"{e.kind}({','.join(_shape_key(child) for child in e.children)})"


def _sort_key(e: Expr) -> Tuple[str, str]:
    return (_shape_key(e), to_string(e))


def canonicalize_commutative(e: Expr) -> Expr:
    """Sort the operands of every ``add`` and ``mul`` into canonical order."""
    if not e.children:
        return e
    children = tuple(canonicalize_commutative(child) for child in e.children)
    if e.kind in COMMUTATIVE_OPS:
        children = tuple(sorted(children, key=_sort_key))
    return Expr(e.kind, None, children)


def commutative_ted_similarity(a: Expr, b: Expr) -> float:
    """Best of the ordered and the canonically ordered similarity."""
    ordered = normalized_ted_similarity(a, b)
    canonical = normalized_ted_similarity(
        canonicalize_commutative(a), canonicalize_commutative(b)
    )
    return max(ordered, canonical)
