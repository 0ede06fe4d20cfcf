# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Run a benchmark suite and write its report.

Writes ``bench_runs.csv`` (one row per discovered trajectory),
``bench_table.csv`` (mean and std of TED and test MSE per system and
alpha) and ``bench_curves.csv`` (mean convergence per alpha).

Usage:
    resr bench --workers 8
    resr bench --systems spring_mass --seeds 3 --alphas 0 0.75
    resr bench --full --workers 32
"""

from ..bank import BankError
from ..dynamics import SYSTEM_KINDS
from ..pipeline import BenchmarkSuite, run_benchmark
from ..search import SearchConfigError
from .base import EXIT_OK, EXIT_USAGE, BaseCommand, CommandError


class BenchCommand(BaseCommand):
    """Systems x seeds x alphas benchmark."""

    name = "bench"
    help = "Benchmark retrieval seeding across systems, seeds and alphas"

    def add_arguments(self, parser):
        parser.add_argument("--full", action="store_true", help="Use the full-scale profile")
        parser.add_argument("--systems", nargs="+", choices=SYSTEM_KINDS, help="Systems to run")
        parser.add_argument("--seeds", type=int, help="Number of seeds, 0..N-1")
        parser.add_argument("--alphas", nargs="+", type=float, help="Seeding ratios to compare")
        parser.add_argument("--workers", type=int, help="Cells run in parallel")

    def handle(self, options, settings) -> int:
        try:
            suite = BenchmarkSuite.from_mapping(
                settings,
                profile="full" if options.full else None,
                systems=options.systems,
                seeds=options.seeds,
                alphas=options.alphas,
                workers=options.workers,
            )
            bank = self.load_bank(settings) if any(alpha > 0 for alpha in suite.alphas) else None
        except (SearchConfigError, BankError) as e:
            raise CommandError(str(e), EXIT_USAGE) from e

        report = run_benchmark(suite, bank)
        self.export("bench_runs_csv", report.runs, "bench_runs.csv")
        self.export("bench_table_csv", report.table, "bench_table.csv")
        self.export("bench_curves_csv", report.curves, "bench_curves.csv")
        self.write(report.table.to_string(index=False))
        return EXIT_OK
