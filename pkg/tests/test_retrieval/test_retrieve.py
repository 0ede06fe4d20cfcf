# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for top-k retrieval."""

import math
from unittest import TestCase

import numpy as np

from resr_motion.bank import EquationBank, parse_bank_text
from resr_motion.expr import evaluate_array, parse
from resr_motion.ingestion import Trajectory
from resr_motion.retrieval import (
    EmptyBankRetrievalError,
    RetrievalError,
    RetrievalQuery,
    dtw_distance,
    rescale_to_range,
    retrieve_axes,
    retrieve_top_k,
    score_entry,
)
from tests.oracles import brute_force_dtw

BANK_TEXT = """# VERSION: 1.0.0
constant\taugmented\t100
cosine\taugmented\tcos(t)
line\taugmented\t2 * t + 1
parabola\taugmented\tt ^ 2
decay\taugmented\texp(-0.5 * t)
sine_fast\taugmented\tsin(4 * t)
"""


def query_for(text, k=10, t=None):
    t = np.arange(0, 8.0001, 0.1) if t is None else t
    return RetrievalQuery(evaluate_array(parse(text), t), t, k)


class TestWorkedExample(TestCase):
    """The two-entry bank {100, cos(t)}."""

    def test_cosine_ranks_first(self):
        bank = parse_bank_text("# VERSION: 1.0.0\nconst\taugmented\t100\ncos\taugmented\tcos(t)\n")
        result = retrieve_top_k(query_for("0.5*cos(t+3) + 100"), bank)
        self.assertEqual(result.ids, ["cos", "const"])
        self.assertTrue(math.isinf(result.ranking[1].distance))


class TestRetrieveTopK(TestCase):
    """Tests for retrieve_top_k()."""

    @classmethod
    def setUpClass(cls):
        cls.bank = parse_bank_text(BANK_TEXT)

    def test_exact_member_ranks_first_at_zero(self):
        result = retrieve_top_k(query_for("t ^ 2"), self.bank)
        self.assertEqual(result.ranking[0].entry_id, "parabola")
        self.assertAlmostEqual(result.ranking[0].distance, 0.0, places=9)

    def test_distances_are_non_decreasing(self):
        result = retrieve_top_k(query_for("3 * sin(4 * t + 1) + 50"), self.bank)
        distances = [item.distance for item in result.ranking]
        self.assertEqual(distances, sorted(distances))

    def test_k_truncates(self):
        self.assertEqual(len(retrieve_top_k(query_for("t", k=2), self.bank).ranking), 2)

    def test_k_larger_than_bank(self):
        result = retrieve_top_k(query_for("t", k=50), self.bank)
        self.assertEqual(sorted(result.ids), sorted(self.bank.ids))
        self.assertEqual(set(result.bounds), set(self.bank.ids))

    def test_ties_break_on_id(self):
        bank = parse_bank_text("# VERSION: 1.0.0\nb\taugmented\t3 * t\na\taugmented\t3 * t\n")
        result = retrieve_top_k(query_for("t"), bank)
        self.assertEqual(result.ranking[0].distance, result.ranking[1].distance)
        self.assertEqual(result.ids, ["a", "b"])

    def test_affine_invariance(self):
        t = np.arange(0, 8.0001, 0.1)
        observed = evaluate_array(parse("exp(-0.3 * t) * cos(2 * t)"), t)
        base = retrieve_top_k(RetrievalQuery(observed, t, 10), self.bank)
        for scale, shift in ((3.0, 100.0), (0.01, -5.0)):
            with self.subTest(scale=scale, shift=shift):
                moved = retrieve_top_k(RetrievalQuery(scale * observed + shift, t, 10), self.bank)
                self.assertEqual(moved.ids, base.ids)

    def test_workers_do_not_change_ranking(self):
        query = query_for("0.5*cos(t+3) + 100")
        serial = retrieve_top_k(query, self.bank, workers=1)
        parallel = retrieve_top_k(query, self.bank, workers=2)
        self.assertEqual(serial.ids, parallel.ids)
        self.assertEqual(
            [item.distance for item in serial.ranking],
            [item.distance for item in parallel.ranking],
        )

    def test_other_metrics(self):
        for metric in ("dtw", "euclidean"):
            result = retrieve_top_k(query_for("2 * t + 1"), self.bank, metric=metric)
            self.assertEqual(result.ranking[0].entry_id, "line")
            self.assertEqual(result.metric, metric)

    def test_unknown_metric(self):
        with self.assertRaises(RetrievalError):
            retrieve_top_k(query_for("t"), self.bank, metric="cosine")

    def test_empty_bank(self):
        with self.assertRaises(EmptyBankRetrievalError):
            retrieve_top_k(query_for("t"), EquationBank([], "1.0.0"))


class TestRawDtwRanking(TestCase):
    """N-DTW scores are plain DTW path costs after rescaling the observation."""

    def test_scale_of_entry_is_not_divided_out(self):
        bank = parse_bank_text(
            "# VERSION: 1.0.0\nwide_sine\taugmented\t1000 * sin(t)\nparabola\taugmented\tt ^ 2\n"
        )
        t = np.linspace(0.0, 10.0, 101)
        result = retrieve_top_k(RetrievalQuery(np.cos(t), t, 2), bank)
        self.assertEqual(result.ids, ["parabola", "wide_sine"])
        for item in result.ranking:
            low, high = result.bounds[item.entry_id]
            series = evaluate_array(item.expr, t)
            expected = dtw_distance(rescale_to_range(np.cos(t), low, high), series)
            self.assertAlmostEqual(item.distance, expected, delta=1e-9 * max(1.0, expected))

    def test_score_entry_matches_brute_force_dtw(self):
        bank = parse_bank_text(BANK_TEXT)
        t = np.linspace(0.0, 3.0, 6)
        observed = np.array([2.0, -1.0, 0.5, 4.0, 3.0, -2.0])
        for entry in bank.entries:
            with self.subTest(entry=entry.id):
                distance, bounds = score_entry(entry, t, observed)
                series = evaluate_array(entry.expr, t)
                if bounds[0] == bounds[1]:
                    self.assertTrue(math.isinf(distance))
                    continue
                expected = brute_force_dtw(rescale_to_range(observed, *bounds), series)
                self.assertAlmostEqual(distance, expected, places=9)

    def test_affine_change_keeps_ranking_and_distances(self):
        bank = parse_bank_text(BANK_TEXT)
        t = np.arange(0, 8.0001, 0.1)
        observed = evaluate_array(parse("2 * sin(t) + 0.1 * t"), t)
        base = retrieve_top_k(RetrievalQuery(observed, t, 10), bank)
        for scale, shift in ((250.0, 40.0), (1e-3, 7.0)):
            with self.subTest(scale=scale, shift=shift):
                moved = retrieve_top_k(RetrievalQuery(scale * observed + shift, t, 10), bank)
                self.assertEqual(moved.ids, base.ids)
                for before, after in zip(base.ranking, moved.ranking):
                    if math.isinf(before.distance):
                        self.assertTrue(math.isinf(after.distance))
                    else:
                        tolerance = 1e-6 * max(1.0, before.distance)
                        self.assertAlmostEqual(after.distance, before.distance, delta=tolerance)


class TestScoreEntry(TestCase):
    """Tests for score_entry() edge cases."""

    def test_flat_entry_against_flat_observation(self):
        bank = parse_bank_text("# VERSION: 1.0.0\nc\taugmented\t100\n")
        t = np.arange(5, dtype=float)
        distance, bounds = score_entry(bank.get("c"), t, np.full(5, 3.0))
        self.assertEqual(distance, 0.0)
        self.assertEqual(bounds, (100.0, 100.0))

    def test_non_finite_entry(self):
        bank = parse_bank_text("# VERSION: 1.0.0\nr\taugmented\t1 / (t - 1)\n")
        distance, bounds = score_entry(bank.get("r"), np.arange(4, dtype=float), np.arange(4.0))
        self.assertTrue(math.isinf(distance))
        self.assertIsNone(bounds)


class TestRetrievalQuery(TestCase):

    def test_validation(self):
        with self.assertRaises(RetrievalError):
            RetrievalQuery([1.0], [0.0])
        with self.assertRaises(RetrievalError):
            RetrievalQuery([1.0, 2.0], [0.0, 1.0], k=0)
        with self.assertRaises(RetrievalError):
            RetrievalQuery([1.0, np.nan], [0.0, 1.0])

    def test_retrieve_axes(self):
        t = np.arange(0, 8.0001, 0.1)
        trajectory = Trajectory(0, t, t ** 2, 2 * t + 1, 10.0)
        results = retrieve_axes(trajectory, parse_bank_text(BANK_TEXT), k=1)
        self.assertEqual(results["x"].ids, ["parabola"])
        self.assertEqual(results["y"].ids, ["line"])
