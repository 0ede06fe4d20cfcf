# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for trajectory types, selection and splitting."""

from unittest import TestCase

import numpy as np

from resr_motion.ingestion import (
    IngestionError,
    SplitError,
    Trajectory,
    TrajectorySet,
    select_top_k_by_variance,
    temporal_split,
    variance_score,
)


def make_trajectory(point_id=0, n=100, fps=10.0, scale=1.0):
    t = np.arange(n) / fps
    return Trajectory(point_id, t, scale * np.sin(t), scale * np.cos(t), fps)


class TestTrajectory(TestCase):
    """Tests for Trajectory validation."""

    def test_lengths_must_match(self):
        with self.assertRaises(IngestionError):
            Trajectory(0, [0.0, 0.1], [1.0], [1.0, 2.0], 10.0)

    def test_time_must_increase(self):
        with self.assertRaises(IngestionError):
            Trajectory(0, [0.0, 0.0], [1.0, 2.0], [1.0, 2.0], 10.0)

    def test_coordinates_must_be_finite(self):
        with self.assertRaises(IngestionError):
            Trajectory(0, [0.0, 0.1], [1.0, np.inf], [1.0, 2.0], 10.0)

    def test_segment(self):
        trajectory = make_trajectory(point_id=4, n=20)
        part = trajectory.segment(5, 10)
        self.assertEqual(len(part), 5)
        self.assertEqual(part.point_id, 4)
        np.testing.assert_array_equal(part.t, trajectory.t[5:10])

    def test_arrays_are_read_only(self):
        trajectory = make_trajectory()
        with self.assertRaises(ValueError):
            trajectory.x[0] = 5.0

    def test_axis(self):
        trajectory = make_trajectory()
        self.assertIs(trajectory.axis("y"), trajectory.y)
        with self.assertRaises(IngestionError):
            trajectory.axis("z")

    def test_dt(self):
        self.assertAlmostEqual(make_trajectory(fps=25.0).dt, 0.04)

    def test_mixed_fps_rejected(self):
        with self.assertRaises(IngestionError):
            TrajectorySet([make_trajectory(0, fps=10.0), make_trajectory(1, fps=20.0)])


class TestSelectTopK(TestCase):
    """Tests for variance_score() and select_top_k_by_variance()."""

    def test_variance_score(self):
        trajectory = Trajectory(0, [0, 1, 2], [0, 1, 2], [5, 5, 5], 1.0)
        self.assertAlmostEqual(variance_score(trajectory), 2.0 / 3.0)

    def test_keeps_highest_scores(self):
        scales = [0.0, 1.0, np.sqrt(2), np.sqrt(3), 2.0]
        tracks = TrajectorySet([make_trajectory(i, scale=s) for i, s in enumerate(scales)])
        selected = select_top_k_by_variance(tracks, 2)
        self.assertEqual(selected.point_ids, [4, 3])

    def test_ties_go_to_lower_point_id(self):
        tracks = TrajectorySet([make_trajectory(i) for i in (7, 2, 5)])
        self.assertEqual(select_top_k_by_variance(tracks, 2).point_ids, [2, 5])

    def test_k_larger_than_set(self):
        tracks = TrajectorySet([make_trajectory(0)])
        self.assertEqual(len(select_top_k_by_variance(tracks, 5)), 1)

    def test_k_must_be_positive(self):
        with self.assertRaises(IngestionError):
            select_top_k_by_variance(TrajectorySet([make_trajectory()]), 0)


class TestTemporalSplit(TestCase):
    """Tests for temporal_split()."""

    def test_hundred_samples(self):
        split = temporal_split(make_trajectory(n=100))
        self.assertEqual((len(split.train), len(split.validation), len(split.test)), (80, 10, 10))
        self.assertAlmostEqual(split.boundaries[0], 7.9)
        self.assertAlmostEqual(split.boundaries[1], 8.9)

    def test_segments_are_contiguous(self):
        trajectory = make_trajectory(n=37)
        split = temporal_split(trajectory)
        joined = np.concatenate([split.train.t, split.validation.t, split.test.t])
        np.testing.assert_array_equal(joined, trajectory.t)
        self.assertEqual(len(split.train), 29)
        self.assertEqual(len(split.validation), 4)
        self.assertEqual(split.point_id, 0)

    def test_minimum_length(self):
        split = temporal_split(make_trajectory(n=10))
        self.assertEqual((len(split.train), len(split.validation), len(split.test)), (8, 1, 1))
        with self.assertRaises(SplitError):
            temporal_split(make_trajectory(n=9))
