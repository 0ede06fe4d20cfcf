# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Rank equation-bank entries against an observed trajectory.

Usage:
    resr retrieve --input data/spring_mass.csv --k 10
    resr retrieve --input tracks.csv --point-id 42 --axis y --metric euclidean
"""

from typing import Any, Dict

from ..bank import BankError
from ..ingestion import AXES, IngestionError, load_trajectories, select_top_k_by_variance
from ..retrieval import METRICS, RetrievalError, RetrievalQuery, retrieve_top_k
from .base import EXIT_OK, EXIT_USAGE, BaseCommand, CommandError


def pick_trajectory(trajectory_set, point_id):
    """The requested point, or the highest-variance one."""
    if not len(trajectory_set):
        raise CommandError("input holds no trajectories", EXIT_USAGE)
    if point_id is None:
        return select_top_k_by_variance(trajectory_set, 1).trajectories[0]
    try:
        return trajectory_set.get(point_id)
    except KeyError as e:
        raise CommandError(str(e), EXIT_USAGE) from e


class RetrieveCommand(BaseCommand):
    """Top-k bank retrieval per axis."""

    name = "retrieve"
    help = "Rank equation-bank entries by distance to a trajectory"

    def add_arguments(self, parser):
        parser.add_argument("--input", required=True, help="Trajectory CSV")
        parser.add_argument("--point-id", type=int, help="Point to use (default: highest variance)")
        parser.add_argument("--axis", choices=AXES, help="Axis to match (default: both)")
        parser.add_argument("--k", type=int, help="Entries to return")
        parser.add_argument("--metric", choices=METRICS, help="Distance to rank by")

    def config_overrides(self, options) -> Dict[str, Any]:
        return {"search.top_k_retrieval": options.k, "retrieval.metric": options.metric}

    def handle(self, options, settings) -> int:
        retrieval = settings["retrieval"]
        k = int(settings["search"]["top_k_retrieval"])
        try:
            self.check_input(options.input)
            trajectories = load_trajectories(options.input, settings["ingestion"].get("fps"))
            trajectory = pick_trajectory(trajectories, options.point_id)
            bank = self.load_bank(settings)
            axes = [options.axis] if options.axis else list(AXES)
            for axis in axes:
                query = RetrievalQuery.from_trajectory(trajectory, axis, k)
                result = retrieve_top_k(
                    query, bank, retrieval["metric"], retrieval.get("band"),
                    int(settings["search"]["workers"]),
                )
                self.write(f"# point {trajectory.point_id} axis {axis} ({result.metric})")
                for rank, item in enumerate(result.ranking, start=1):
                    self.write(f"{rank}\t{item.entry_id}\t{item.distance:.6g}\t{item.expression}")
                self.export("retrieval_tsv", result, f"retrieval_p{trajectory.point_id}_{axis}.tsv")
        except (IngestionError, BankError, RetrievalError) as e:
            raise CommandError(str(e), EXIT_USAGE) from e
        return EXIT_OK
