# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Tests for benchmark suites and report aggregation."""

import math
import tempfile
from pathlib import Path
from unittest import TestCase
from unittest.mock import patch

from resr_motion.bank import load_default_bank
from resr_motion.expr import InvalidExprError
from resr_motion.output import ExporterRegistry
from resr_motion.pipeline import benchmark
from resr_motion.pipeline import (
    BenchmarkCell,
    BenchmarkReport,
    BenchmarkSuite,
    aggregate_table,
    mean_curves,
    run_benchmark,
    run_cell,
    runs_frame,
    system_val_mse_at,
    ted_by_alpha,
    val_mse_at,
)
from resr_motion.search import SearchConfigError

TINY_SEARCH = {"n_iterations": 2, "n_populations": 2, "population_size": 8}


def run_row(system="spring_mass", alpha=0.0, seed=0, ted=0.5, mse=1.0, divergent=False):
    return {
        "system": system, "seed": seed, "alpha": alpha, "point_id": 0,
        "ted": ted, "ted_commutative": ted, "test_mse": math.nan if divergent else mse,
        "val_mse": mse, "divergent": divergent, "expr_x": "t", "expr_y": "t", "error": "",
    }


def curve_row(alpha, iteration, train, val, system="spring_mass"):
    return {
        "system": system, "seed": 0, "alpha": alpha, "point_id": 0, "axis": "x",
        "iteration": iteration, "train_mse": train, "val_mse": val,
    }


class TestBenchmarkSuite(TestCase):
    """Tests for BenchmarkSuite.from_mapping()."""

    def test_desk_profile(self):
        suite = BenchmarkSuite.from_mapping({"search": {"n_populations": 30, "workers": 8}})
        self.assertEqual(suite.profile, "desk")
        self.assertEqual(suite.systems, ("spring_mass", "damped_spring_mass", "projectile"))
        self.assertEqual(suite.seeds, (0, 1, 2))
        self.assertEqual(suite.alphas, (0.0, 0.75))
        self.assertEqual(suite.search.n_populations, 4)
        self.assertEqual(suite.search.n_iterations, 100)
        self.assertEqual(suite.search.workers, 1)

    def test_full_profile(self):
        suite = BenchmarkSuite.from_mapping({}, profile="full")
        self.assertEqual(len(suite.seeds), 10)
        self.assertEqual(suite.search.n_populations, 30)
        self.assertEqual(suite.grid_size, 10)
        self.assertEqual(suite.pipeline.top_k_trajectories, 5)
        self.assertIn("double_pendulum", suite.systems)

    def test_overrides(self):
        suite = BenchmarkSuite.from_mapping(
            {"benchmark": {"search": TINY_SEARCH, "noise": 1.5}},
            systems=["projectile"], seeds=[4, 5], alphas=[0.5], workers=None,
        )
        self.assertEqual(suite.systems, ("projectile",))
        self.assertEqual(suite.seeds, (4, 5))
        self.assertEqual(suite.alphas, (0.5,))
        self.assertEqual(suite.noise, 1.5)
        self.assertEqual(suite.search.n_iterations, 2)
        self.assertEqual(suite.workers, 1)

    def test_invalid(self):
        with self.assertRaises(SearchConfigError):
            BenchmarkSuite.from_mapping({}, profile="huge")
        with self.assertRaises(SearchConfigError):
            BenchmarkSuite.from_mapping({"benchmark": {"videos": 3}})
        with self.assertRaises(SearchConfigError):
            BenchmarkSuite(systems=("rocket",))
        with self.assertRaises(SearchConfigError):
            BenchmarkSuite(alphas=(1.5,))

    def test_cell_order(self):
        suite = BenchmarkSuite(systems=("spring_mass", "projectile"), seeds=(0, 1), alphas=(0.0, 0.75))
        cells = [(c.system, c.alpha, c.seed) for c in suite.cells]
        self.assertEqual(len(cells), 8)
        self.assertEqual(cells[:3], [("spring_mass", 0.0, 0), ("spring_mass", 0.0, 1), ("spring_mass", 0.75, 0)])
        self.assertEqual(cells[-1], ("projectile", 0.75, 1))


class TestAggregation(TestCase):
    """Tests for runs_frame(), aggregate_table() and mean_curves()."""

    def setUp(self):
        ok = BenchmarkCell("spring_mass", 0, 0.0, rows=[
            run_row(ted=0.5, mse=2.0), run_row(ted=0.7, mse=4.0), run_row(divergent=True),
        ])
        failed = BenchmarkCell("spring_mass", 1, 0.0, error="SplitError: too short")
        self.cells = [ok, failed]

    def test_runs_frame_marks_failures(self):
        runs = runs_frame(self.cells)
        self.assertEqual(len(runs), 4)
        self.assertEqual(runs.iloc[3]["error"], "SplitError: too short")
        self.assertTrue(math.isnan(runs.iloc[3]["ted"]))

    def test_table_statistics(self):
        table = aggregate_table(runs_frame(self.cells), ["spring_mass"], [0.0, 0.75])
        row = table.iloc[0]
        self.assertEqual(row["runs"], 2)
        self.assertAlmostEqual(row["ted_mean"], 0.6)
        self.assertAlmostEqual(row["ted_std"], 0.1)
        self.assertAlmostEqual(row["mse_mean"], 3.0)
        self.assertAlmostEqual(row["mse_std"], 1.0)
        self.assertEqual(row["failed"], 2)
        empty = table.iloc[1]
        self.assertEqual(empty["runs"], 0)
        self.assertTrue(math.isnan(empty["ted_mean"]))

    def test_mean_curves(self):
        cells = [
            BenchmarkCell("spring_mass", 0, 0.75, curves=[curve_row(0.75, 1, 1.0, 2.0)]),
            BenchmarkCell("projectile", 0, 0.75, curves=[curve_row(0.75, 1, 3.0, 4.0, "projectile")]),
            BenchmarkCell("spring_mass", 0, 0.0, curves=[curve_row(0.0, 1, 5.0, 6.0), curve_row(0.0, 2, 4.0, 5.0)]),
        ]
        curves = mean_curves(cells, [0.75, 0.0])
        self.assertEqual(list(curves["alpha"]), [0.75, 0.0, 0.0])
        self.assertEqual(list(curves["iteration"]), [1, 1, 2])
        self.assertEqual(curves.iloc[0]["train_mse_mean"], 2.0)
        self.assertEqual(curves.iloc[0]["val_mse_mean"], 3.0)

        report = BenchmarkReport(runs_frame(cells), aggregate_table(runs_frame(cells), ["spring_mass"], [0.75, 0.0]),
                                 curves, BenchmarkSuite(), cells)
        self.assertEqual(val_mse_at(report, 1), {0.75: 3.0, 0.0: 6.0})
        self.assertEqual(system_val_mse_at(report, "spring_mass", 1), {0.0: 6.0, 0.75: 2.0})
        self.assertEqual(set(ted_by_alpha(report, "spring_mass")), {0.75, 0.0})

    def test_no_curves(self):
        self.assertEqual(len(mean_curves([], [0.0])), 0)


class TestRunBenchmark(TestCase):
    """A tiny end-to-end suite."""

    def test_failed_cell_is_recorded(self):
        suite = BenchmarkSuite.from_mapping(
            {"benchmark": {"search": TINY_SEARCH}},
            systems=["projectile"], seeds=1, alphas=[0.0], sample_rate=1.0,
        )
        cell = run_cell(suite.cells[0], suite, None)
        self.assertIn("SplitError", cell.error)
        self.assertEqual(cell.rows, [])

    def test_tiny_suite(self):
        suite = BenchmarkSuite.from_mapping(
            {"benchmark": {"search": TINY_SEARCH}},
            systems=["projectile"], seeds=1, alphas=[0.0],
        )
        report = run_benchmark(suite, None)
        self.assertEqual(len(report.runs), 1)
        self.assertEqual(report.failed_cells, [])
        self.assertEqual(list(report.table["system"]), ["projectile"])
        self.assertEqual(list(report.curves["iteration"]), [1, 2])
        self.assertGreaterEqual(report.runs.iloc[0]["ted"], 0.0)

    def test_unexpected_cell_errors_do_not_stop_the_suite(self):
        suite = BenchmarkSuite.from_mapping(
            {"benchmark": {"search": TINY_SEARCH}},
            systems=["projectile"], seeds=3, alphas=[0.0],
        )
        real_trajectories = benchmark._cell_trajectories
        failures = {1: InvalidExprError("constant overflowed"), 2: RuntimeError("worker lost")}

        def failing_trajectories(cell, suite):
            if cell.seed in failures:
                raise failures[cell.seed]
            return real_trajectories(cell, suite)

        with patch.object(benchmark, "_cell_trajectories", side_effect=failing_trajectories), \
                self.assertLogs("resr_motion.pipeline.benchmark", level="ERROR") as logs:
            report = run_benchmark(suite, None)

        self.assertEqual([cell.seed for cell in report.failed_cells], [1, 2])
        self.assertIn("InvalidExprError", report.failed_cells[0].error)
        self.assertIn("RuntimeError", report.failed_cells[1].error)
        self.assertTrue(any("projectile/seed 1/alpha 0.0" in line for line in logs.output))
        self.assertEqual(len(report.runs), 3)
        self.assertEqual(list(report.runs["error"].fillna("") != ""), [False, True, True])
        row = report.table.iloc[0]
        self.assertGreaterEqual(row["failed"], 2)
        self.assertEqual(row["runs"] + row["failed"], 3)


class TestReportDeterminism(TestCase):
    """Report files do not depend on the number of workers."""

    def write_report(self, workers, root):
        suite = BenchmarkSuite.from_mapping(
            {"benchmark": {"search": TINY_SEARCH}},
            systems=["projectile"], seeds=1, alphas=[0.0, 0.75], workers=workers,
        )
        report = run_benchmark(suite, load_default_bank())
        contents = {}
        for name, frame in (("runs", report.runs), ("table", report.table), ("curves", report.curves)):
            path = Path(root) / f"{name}_{workers}.csv"
            ExporterRegistry.export(f"bench_{name}_csv", frame, path)
            contents[name] = path.read_bytes()
        return contents

    def test_worker_count_does_not_change_reports(self):
        with tempfile.TemporaryDirectory() as root:
            serial = self.write_report(1, root)
            parallel = self.write_report(2, root)
        self.assertEqual(serial, parallel)
        self.assertEqual(serial["curves"].count(b"\n"), 5)
