# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for the Pareto front and the convergence log."""

import math
from unittest import TestCase

import numpy as np

from resr_motion.expr import complexity, parse
from resr_motion.search import (
    PENALTY_MSE,
    Candidate,
    ConvergenceLog,
    ConvergenceRow,
    ParetoFront,
    fitness,
    make_candidate,
    mean_squared_error,
)


def candidate(text, mse):
    e = parse(text)
    return Candidate(e, mse, complexity(e), 0, mse)


class TestParetoFront(TestCase):
    """Tests for ParetoFront."""

    def test_members_are_non_dominated(self):
        front = ParetoFront([
            candidate("t", 10.0),
            candidate("t + 1", 12.0),
            candidate("2 * t + 1", 1.0),
            candidate("cos(2 * t) + 1", 0.5),
        ])
        members = front.members()
        self.assertEqual([c.complexity for c in members], [1, 5, 6])
        self.assertEqual([c.mse for c in members], [10.0, 1.0, 0.5])
        self.assertEqual(front.best().mse, 0.5)
        self.assertEqual(front.best_at(5).mse, 1.0)
        self.assertIsNone(front.best_at(0))

    def test_levels_never_get_worse(self):
        front = ParetoFront([candidate("t + 1", 3.0)])
        self.assertFalse(front.offer(candidate("t + 2", 4.0)))
        self.assertTrue(front.offer(candidate("t - 2", 2.0)))
        self.assertEqual(front.levels()[3].mse, 2.0)

    def test_select_by_validation(self):
        t = np.linspace(0, 1, 10)
        front = ParetoFront([candidate("t", 5.0), candidate("t ^ 2", 1.0)])
        selected = front.select_by_validation(t, t)
        self.assertEqual(selected.expression, "t")

    def test_all_penalized(self):
        front = ParetoFront([candidate("log(t)", PENALTY_MSE)])
        self.assertTrue(front.all_penalized)
        self.assertFalse(ParetoFront().all_penalized)
        self.assertFalse(ParetoFront())


class TestCandidates(TestCase):
    """Tests for scoring."""

    def test_penalty_for_non_finite_prediction(self):
        t = np.array([-1.0, 0.0, 1.0])
        self.assertEqual(mean_squared_error(parse("1 / t"), t, t), PENALTY_MSE)

    def test_selection_score(self):
        t = np.arange(10.0)
        c = make_candidate(parse("t + 1"), t, t, parsimony=0.01)
        self.assertEqual(c.mse, 1.0)
        self.assertAlmostEqual(c.score, 1.0 * (1 + 0.01 * 3))
        self.assertFalse(c.is_penalized)

    def test_fitness_is_train_mse(self):
        t = np.arange(10.0)
        c = make_candidate(parse("2 * t"), t, t, parsimony=0.01)
        self.assertEqual(fitness(c, t, t), c.mse)
        self.assertEqual(fitness(c, t, 2 * t), 0.0)


class TestConvergenceLog(TestCase):
    """Tests for ConvergenceLog."""

    def test_records_round_trip(self):
        log = ConvergenceLog()
        log.append(ConvergenceRow(1, 2.0, math.nan, "t", 1))
        log.append(ConvergenceRow(2, 1.0, 0.5, "t + 1", 2))
        self.assertEqual(log.at(2).best_expr, "t + 1")
        self.assertEqual(log.column("best_train_mse"), [2.0, 1.0])
        records = log.to_records()
        records[0]["best_val_mse"] = None
        restored = ConvergenceLog.from_records(records)
        self.assertTrue(math.isnan(restored.at(1).best_val_mse))
        self.assertEqual(restored.at(2).front_size, 2)
