# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for ground-truth generation, noise and tracker emulation."""

from unittest import TestCase

import numpy as np

from resr_motion.dynamics import (
    CLOSED_FORM_KINDS,
    SystemSpec,
    add_noise,
    generate,
    sample_system_spec,
    synthesize_tracks,
)
from resr_motion.expr import evaluate_array
from resr_motion.ingestion import Trajectory


class TestGenerate(TestCase):
    """Tests for generate()."""

    def test_analytic_equations_match_samples(self):
        for kind in CLOSED_FORM_KINDS:
            with self.subTest(kind=kind):
                truth = generate(sample_system_spec(kind, 1))
                self.assertTrue(truth.has_equations)
                t = truth.trajectory.t
                np.testing.assert_allclose(evaluate_array(truth.analytic_x, t), truth.trajectory.x, rtol=1e-9, atol=1e-9)
                np.testing.assert_allclose(evaluate_array(truth.analytic_y, t), truth.trajectory.y, rtol=1e-9, atol=1e-9)

    def test_projectile_starts_at_initial_position(self):
        spec = SystemSpec("projectile", {"x0": -2.0, "y0": 0.5})
        trajectory = generate(spec).trajectory
        self.assertEqual(trajectory.x[0], 100.0 * -2.0 + 320.0)
        self.assertEqual(trajectory.y[0], 100.0 * 0.5 + 240.0)

    def test_spring_mass_energy_is_constant(self):
        spec = SystemSpec("spring_mass", {"amplitude": 1.3, "phase": 0.4}, duration=31.5)
        truth = generate(spec)
        k, m = truth.parameters["spring_constant"], truth.parameters["mass"]
        energy = 0.5 * k * truth.states["x"] ** 2 + 0.5 * m * truth.states["vx"] ** 2
        expected = 0.5 * k * 1.3 ** 2
        self.assertLess(np.max(np.abs(energy - expected)) / expected, 1e-3)

    def test_sample_grid(self):
        truth = generate(SystemSpec("two_body", duration=2.0, sample_rate=10.0))
        self.assertEqual(len(truth.trajectory), 21)
        self.assertEqual(truth.trajectory.fps, 10.0)
        self.assertAlmostEqual(truth.trajectory.t[-1], 2.0)

    def test_seed_is_reproducible(self):
        spec = SystemSpec("damped_spring_mass")
        a = generate(spec, seed=9).trajectory
        b = generate(spec, seed=9).trajectory
        np.testing.assert_array_equal(a.x, b.x)

    def test_sidecar(self):
        sidecar = generate(SystemSpec("spring_mass")).sidecar()
        self.assertEqual(sidecar["system"]["kind"], "spring_mass")
        self.assertIsNotNone(sidecar["analytic_x"])
        pendulum = generate(SystemSpec("single_pendulum", duration=1.0)).sidecar()
        self.assertIsNone(pendulum["analytic_x"])


class TestNoise(TestCase):
    """Tests for add_noise()."""

    def setUp(self):
        t = np.arange(10000) / 30.0
        self.trajectory = Trajectory(0, t, np.zeros_like(t), np.zeros_like(t), 30.0)

    def test_zero_sigma_is_identity(self):
        self.assertIs(add_noise(self.trajectory, 0.0, seed=1), self.trajectory)

    def test_empirical_std(self):
        noisy = add_noise(self.trajectory, 1.0, seed=1)
        for axis in ("x", "y"):
            std = float(np.std(noisy.axis(axis) - self.trajectory.axis(axis)))
            self.assertGreaterEqual(std, 0.97)
            self.assertLessEqual(std, 1.03)

    def test_fixed_seed_is_reproducible(self):
        a = add_noise(self.trajectory, 2.0, seed=5)
        b = add_noise(self.trajectory, 2.0, seed=5)
        self.assertEqual(a.x.tobytes(), b.x.tobytes())

    def test_negative_sigma(self):
        with self.assertRaises(ValueError):
            add_noise(self.trajectory, -1.0)


class TestSynthesizeTracks(TestCase):
    """Tests for synthesize_tracks()."""

    def setUp(self):
        self.truth = generate(SystemSpec("spring_mass", duration=2.0))

    def test_grid_layout(self):
        tracks = synthesize_tracks(self.truth, 4)
        self.assertEqual(len(tracks), 16)
        self.assertEqual(tracks.grid_size, 4)
        self.assertEqual(tracks.point_ids, list(range(16)))

    def test_object_points_follow_the_object(self):
        tracks = synthesize_tracks(self.truth, 5, object_points=3)
        source = self.truth.trajectory
        moving = [
            trajectory for trajectory in tracks
            if np.ptp(trajectory.x) > 0
        ]
        self.assertEqual(len(moving), 3)
        for trajectory in moving:
            np.testing.assert_allclose(trajectory.x - trajectory.x[0], source.x - source.x[0])

    def test_bad_grid(self):
        with self.assertRaises(ValueError):
            synthesize_tracks(self.truth, 0)
