# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Discover x(t) and y(t) for the trajectories of a file.

For each selected trajectory writes ``discovery_p<ID>.json`` plus the
per-axis ``convergence_p<ID>_<axis>.csv`` and ``front_p<ID>_<axis>.tsv``.
When the input's sidecar carries analytic equations, TED similarity to
them is reported.

Usage:
    resr discover --input data/spring_mass.csv --seed 1
    resr discover --input tracks.csv --top-k-trajectories 5 --workers 8
"""

from typing import Any, Dict

from ..bank import BankError
from ..expr import ExprError
from ..ingestion import AXES, IngestionError, load_trajectories, read_sidecar, temporal_split
from ..pipeline import (
    PipelineConfig,
    PipelineError,
    discover,
    discover_set,
    ground_truth_from_sidecar,
)
from ..retrieval import RetrievalError
from ..search import SearchError
from .base import EXIT_DIVERGENT, EXIT_OK, EXIT_USAGE, BaseCommand, CommandError


class DiscoverCommand(BaseCommand):
    """Retrieval-seeded equation discovery."""

    name = "discover"
    help = "Discover trajectory equations with retrieval-seeded search"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, help="Trajectory CSV")
        parser.add_argument("--point-id", type=int, help="Discover only this point")
        parser.add_argument("--top-k-trajectories", type=int, help="Trajectories kept by variance")
        parser.add_argument("--workers", type=int, help="Worker processes for the search")

    def config_overrides(self, options) -> Dict[str, Any]:
        return {
            "pipeline.top_k_trajectories": options.top_k_trajectories,
            "search.workers": options.workers,
        }

    def handle(self, options, settings) -> int:
        try:
            pipeline = PipelineConfig.from_mapping(settings)
            self.check_input(options.input)
            trajectories = load_trajectories(options.input, settings["ingestion"].get("fps"))
            if not len(trajectories):
                raise CommandError("input holds no trajectories", EXIT_USAGE)
            truth = ground_truth_from_sidecar(read_sidecar(options.input))
            bank = self.load_bank(settings) if pipeline.search.n_seed > 0 else None
            if options.point_id is not None:
                split = temporal_split(trajectories.get(options.point_id))
                results = [discover(split, bank, pipeline, truth)]
            else:
                results = discover_set(trajectories, bank, pipeline, truth).results
        except KeyError as e:
            raise CommandError(f"no trajectory for point {options.point_id}", EXIT_USAGE) from e
        except (IngestionError, BankError, RetrievalError, SearchError, PipelineError, ExprError) as e:
            raise CommandError(str(e), EXIT_USAGE) from e

        divergent = False
        for result in results:
            point = result.point_id
            self.export("discovery_json", result, f"discovery_p{point}.json")
            for axis in AXES:
                self.export("convergence_csv", result.convergence[axis], f"convergence_p{point}_{axis}.csv")
                self.export("front_tsv", result.fronts[axis], f"front_p{point}_{axis}.tsv")
            summary = f"point {point}: x(t) = {result.f_x}  y(t) = {result.f_y}  test MSE {result.test_mse:.6g}"
            if result.ted_similarity:
                summary += f"  TED {result.mean_ted:.3f}"
            if result.divergent:
                summary += "  DIVERGENT"
                divergent = True
            self.write(summary)
        return EXIT_DIVERGENT if divergent else EXIT_OK
