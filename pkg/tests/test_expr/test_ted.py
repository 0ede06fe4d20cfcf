# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for tree edit distance and TED similarity."""

from unittest import TestCase

import numpy as np

from resr_motion.expr import (
    BINARY_OPS,
    UNARY_OPS,
    binary,
    canonicalize_commutative,
    commutative_ted_similarity,
    complexity,
    const,
    normalized_ted_similarity,
    parse,
    tree_edit_distance,
    unary,
    var,
)
from tests.oracles import oracle_tree_edit_distance


def random_expr(rng, max_depth):
    """Small random tree; constants drawn from a few values."""
    if max_depth <= 1 or rng.random() < 0.3:
        return var() if rng.random() < 0.5 else const(float(rng.integers(-3, 4)))
    if rng.random() < 0.35:
        op = UNARY_OPS[rng.integers(len(UNARY_OPS))]
        return unary(op, random_expr(rng, max_depth - 1))
    op = BINARY_OPS[rng.integers(len(BINARY_OPS))]
    return binary(op, random_expr(rng, max_depth - 1), random_expr(rng, max_depth - 1))


def small_expr(rng, max_nodes=6):
    while True:
        e = random_expr(rng, 4)
        if complexity(e) <= max_nodes:
            return e


class TestTreeEditDistance(TestCase):
    """Tests for tree_edit_distance()."""

    def test_identical_trees(self):
        e = parse("exp(-0.5 * t) * cos(2 * t + 1)")
        self.assertEqual(tree_edit_distance(e, e), 0)

    def test_constants_share_a_label(self):
        self.assertEqual(tree_edit_distance(parse("2 * t + 1"), parse("7.5 * t - -3")), 1)
        self.assertEqual(tree_edit_distance(parse("3"), parse("-4.25")), 0)

    def test_single_relabel(self):
        self.assertEqual(tree_edit_distance(parse("cos(t)"), parse("sin(t)")), 1)
        self.assertEqual(tree_edit_distance(parse("t + 1"), parse("t * 1")), 1)

    def test_insert_node(self):
        self.assertEqual(tree_edit_distance(parse("t"), parse("cos(t)")), 1)
        self.assertEqual(tree_edit_distance(parse("t"), parse("t + 1")), 2)

    def test_symmetric(self):
        a = parse("sqrt(t) + log(t + 1)")
        b = parse("sin(t) / tan(t)")
        self.assertEqual(tree_edit_distance(a, b), tree_edit_distance(b, a))

    def test_matches_oracle(self):
        rng = np.random.default_rng(20240501)
        for index in range(500):
            a = small_expr(rng)
            b = small_expr(rng)
            with self.subTest(pair=index, a=str(a), b=str(b)):
                self.assertEqual(tree_edit_distance(a, b), oracle_tree_edit_distance(a, b))

    def test_bounded_by_sizes(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            a = random_expr(rng, 5)
            b = random_expr(rng, 5)
            distance = tree_edit_distance(a, b)
            self.assertGreaterEqual(distance, abs(complexity(a) - complexity(b)))
            self.assertLessEqual(distance, complexity(a) + complexity(b))


class TestSimilarity(TestCase):
    """Tests for the normalised and commutative similarities."""

    def test_normalized(self):
        self.assertEqual(normalized_ted_similarity(parse("t + 1"), parse("t + 2")), 1.0)
        self.assertAlmostEqual(normalized_ted_similarity(parse("cos(t)"), parse("sin(t)")), 0.5)

    def test_range(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            similarity = normalized_ted_similarity(random_expr(rng, 4), random_expr(rng, 4))
            self.assertGreaterEqual(similarity, 0.0)
            self.assertLessEqual(similarity, 1.0)

    def test_commutative_ignores_operand_order(self):
        a = parse("t + cos(t)")
        b = parse("cos(t) + t")
        self.assertLess(normalized_ted_similarity(a, b), 1.0)
        self.assertEqual(commutative_ted_similarity(a, b), 1.0)

    def test_commutative_never_below_ordered(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            a = random_expr(rng, 4)
            b = random_expr(rng, 4)
            self.assertGreaterEqual(
                commutative_ted_similarity(a, b), normalized_ted_similarity(a, b)
            )

    def test_canonicalize_keeps_non_commutative_order(self):
        e = parse("cos(t) - t")
        self.assertEqual(canonicalize_commutative(e), e)
        self.assertEqual(
            canonicalize_commutative(parse("t * 2")),
            canonicalize_commutative(parse("2 * t")),
        )
