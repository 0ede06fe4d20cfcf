# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for constant fitting."""

from unittest import TestCase

import numpy as np

from resr_motion.expr import constants, parse
from resr_motion.search import mean_squared_error, optimize_constants
from tests.oracles import least_squares_scale


class TestOptimizeConstants(TestCase):
    """Tests for optimize_constants()."""

    def setUp(self):
        self.t = np.linspace(0.0, 5.0, 100)

    def test_linear_scale_matches_least_squares(self):
        y = 2.0 * self.t
        fitted, mse = optimize_constants(parse("1 * t"), self.t, y)
        (c,) = constants(fitted)
        self.assertAlmostEqual(c, least_squares_scale(self.t, y), delta=1e-6)
        self.assertLess(abs(c - 2.0), 1e-6)
        self.assertEqual(mse, mean_squared_error(fitted, self.t, y))

    def test_amplitude_and_frequency(self):
        y = 3.0 * np.cos(2.0 * self.t)
        fitted, mse = optimize_constants(
            parse("2.5 * cos(1.8 * t)"), self.t, y, restarts=8, evaluations=200
        )
        self.assertLess(mse, 1e-8)
        a, b = constants(fitted)
        self.assertAlmostEqual(a, 3.0, delta=1e-3)
        self.assertAlmostEqual(b, 2.0, delta=1e-3)

    def test_never_worse_than_input(self):
        y = np.sin(self.t)
        start = parse("0.9 * sin(1 * t)")
        _, mse = optimize_constants(start, self.t, y, restarts=2, evaluations=10)
        self.assertLessEqual(mse, mean_squared_error(start, self.t, y))

    def test_no_constants(self):
        e = parse("cos(t)")
        fitted, mse = optimize_constants(e, self.t, np.cos(self.t))
        self.assertIs(fitted, e)
        self.assertEqual(mse, 0.0)

    def test_reproducible_with_seeded_generator(self):
        y = 1.7 * np.exp(-0.4 * self.t)
        start = parse("1 * exp(-1 * t)")
        first = optimize_constants(start, self.t, y, rng=np.random.default_rng(4))
        second = optimize_constants(start, self.t, y, rng=np.random.default_rng(4))
        self.assertEqual(first, second)
