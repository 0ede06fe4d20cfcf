# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for loading and writing tracked-point CSV files."""

import json
import tempfile
from pathlib import Path
from unittest import TestCase

import numpy as np

from resr_motion.ingestion import (
    DuplicateFrameError,
    MissingColumnsError,
    MissingFpsError,
    NonFiniteCoordinateError,
    NonMonotonicFramesError,
    TooFewSamplesError,
    Trajectory,
    TrajectorySet,
    load_trajectories,
    read_sidecar,
    write_trajectories,
)

HEADER = "point_id,frame,x,y\n"


class LoaderTestCase(TestCase):

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.root = Path(self.temp_dir.name)

    def tearDown(self):
        self.temp_dir.cleanup()

    def write_csv(self, body, name="tracks.csv", sidecar=None):
        path = self.root / name
        path.write_text(HEADER + body)
        if sidecar is not None:
            path.with_suffix(".json").write_text(json.dumps(sidecar))
        return path


class TestLoadTrajectories(LoaderTestCase):
    """Tests for load_trajectories()."""

    def test_groups_by_point(self):
        path = self.write_csv("1,0,5,6\n0,0,1,2\n0,1,3,4\n1,1,7,8\n")
        tracks = load_trajectories(path, fps=10.0)
        self.assertEqual(tracks.point_ids, [0, 1])
        trajectory = tracks.get(0)
        np.testing.assert_allclose(trajectory.t, [0.0, 0.1])
        np.testing.assert_allclose(trajectory.x, [1.0, 3.0])
        np.testing.assert_allclose(tracks.get(1).y, [6.0, 8.0])

    def test_fps_from_sidecar(self):
        path = self.write_csv("0,0,1,2\n0,2,3,4\n", sidecar={"fps": 20.0, "grid_size": 3})
        tracks = load_trajectories(path)
        self.assertEqual(tracks.fps, 20.0)
        self.assertEqual(tracks.grid_size, 3)
        np.testing.assert_allclose(tracks.get(0).t, [0.0, 0.1])

    def test_argument_overrides_sidecar(self):
        path = self.write_csv("0,0,1,2\n0,1,3,4\n", sidecar={"fps": 20.0})
        self.assertEqual(load_trajectories(path, fps=5.0).fps, 5.0)

    def test_header_only(self):
        tracks = load_trajectories(self.write_csv(""))
        self.assertEqual(len(tracks), 0)

    def test_missing_columns(self):
        path = self.root / "bad.csv"
        path.write_text("point_id,frame,x\n0,0,1\n")
        with self.assertRaises(MissingColumnsError) as ctx:
            load_trajectories(path, fps=10.0)
        self.assertEqual(ctx.exception.row, 1)

    def test_missing_fps(self):
        with self.assertRaises(MissingFpsError):
            load_trajectories(self.write_csv("0,0,1,2\n0,1,3,4\n"))

    def test_non_finite_coordinate(self):
        path = self.write_csv("0,0,1,2\n0,1,nan,4\n")
        with self.assertRaises(NonFiniteCoordinateError) as ctx:
            load_trajectories(path, fps=10.0)
        self.assertEqual(ctx.exception.row, 3)

    def test_duplicate_frame(self):
        path = self.write_csv("0,0,1,2\n0,1,3,4\n0,1,5,6\n")
        with self.assertRaises(DuplicateFrameError) as ctx:
            load_trajectories(path, fps=10.0)
        self.assertEqual(ctx.exception.row, 4)

    def test_duplicate_frame_far_apart(self):
        for text, row in (
            ("0,0,1,2\n0,1,3,4\n1,0,0,0\n1,1,0,0\n0,1,5,6\n", 6),
            ("0,0,1,2\n0,1,3,4\n0,2,5,6\n0,1,7,8\n", 5),
        ):
            with self.subTest(row=row):
                with self.assertRaises(DuplicateFrameError) as ctx:
                    load_trajectories(self.write_csv(text), fps=10.0)
                self.assertEqual(ctx.exception.row, row)
                self.assertIn("duplicate frame 1 for point 0", str(ctx.exception))

    def test_non_monotonic_frames(self):
        path = self.write_csv("0,0,1,2\n0,2,3,4\n0,1,5,6\n")
        with self.assertRaises(NonMonotonicFramesError) as ctx:
            load_trajectories(path, fps=10.0)
        self.assertIn("row 4", str(ctx.exception))

    def test_single_sample(self):
        with self.assertRaises(TooFewSamplesError):
            load_trajectories(self.write_csv("0,0,1,2\n"), fps=10.0)


class TestWriteTrajectories(LoaderTestCase):
    """Tests for write_trajectories() and read_sidecar()."""

    def test_written_file_loads_back(self):
        t = np.arange(12) / 30.0
        tracks = TrajectorySet(
            [
                Trajectory(0, t, 100 + t, 200 - t, 30.0),
                Trajectory(3, t, np.full(12, 5.0), np.full(12, 6.0), 30.0),
            ],
            grid_size=2,
        )
        path = self.root / "out.csv"
        results = write_trajectories(tracks, path, {"analytic_x": "t + 100"})
        self.assertEqual(sorted(results), ["out.csv", "out.json"])
        self.assertEqual(results["out.csv"].count, 24)

        sidecar = read_sidecar(path)
        self.assertEqual(sidecar["fps"], 30.0)
        self.assertEqual(sidecar["analytic_x"], "t + 100")

        loaded = load_trajectories(path)
        self.assertEqual(loaded.point_ids, [0, 3])
        self.assertEqual(loaded.grid_size, 2)
        np.testing.assert_allclose(loaded.get(0).t, t)
        np.testing.assert_allclose(loaded.get(0).x, 100 + t)

    def test_missing_sidecar_is_empty(self):
        self.assertEqual(read_sidecar(self.root / "none.csv"), {})
