# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Generate a synthetic trajectory file.

Writes ``<system>.csv`` (``point_id,frame,x,y``) and its ``<system>.json``
sidecar holding fps, grid size, the system spec and, for closed-form
systems, the analytic x(t) and y(t) used as ground truth by ``discover``.

Usage:
    resr gen-data --system spring_mass --out-dir data/
    resr gen-data --system projectile --grid 10 --noise 0.5 --seed 3
"""

from typing import Any, Dict

from ..dynamics import (
    SYSTEM_KINDS,
    DynamicsError,
    add_noise,
    generate,
    sample_system_spec,
    synthesize_tracks,
)
from ..ingestion import IngestionError, TrajectorySet, write_trajectories
from .base import EXIT_OK, EXIT_USAGE, BaseCommand, CommandError


class GenDataCommand(BaseCommand):
    """Simulate a system and write its trajectories."""

    name = "gen-data"
    help = "Generate synthetic trajectories with ground-truth equations"

    def add_arguments(self, parser):
        parser.add_argument("--system", required=True, choices=SYSTEM_KINDS, help="System kind")
        parser.add_argument("--grid", type=int, help="Emulate an M x M tracker grid")
        parser.add_argument("--noise", type=float, help="Gaussian pixel noise sigma")
        parser.add_argument("--duration", type=float, help="Seconds to simulate")
        parser.add_argument("--rate", type=float, help="Samples per second")
        parser.add_argument("--name", help="Output file stem (default: the system kind)")

    def config_overrides(self, options) -> Dict[str, Any]:
        return {
            "dynamics.grid_size": options.grid,
            "dynamics.noise": options.noise,
            "dynamics.duration": options.duration,
            "dynamics.sample_rate": options.rate,
        }

    def handle(self, options, settings) -> int:
        dynamics = settings["dynamics"]
        seed = settings["search"]["seed"]
        try:
            spec = sample_system_spec(
                options.system,
                seed,
                dynamics.get("initial_state_ranges"),
                duration=float(dynamics["duration"]),
                sample_rate=float(dynamics["sample_rate"]),
            )
            truth = generate(spec, seed)
            grid_size = dynamics.get("grid_size")
            if grid_size:
                tracks = synthesize_tracks(
                    truth,
                    int(grid_size),
                    tuple(dynamics["image_size"]),
                    int(dynamics["object_points"]),
                    seed=seed,
                )
            else:
                tracks = TrajectorySet([truth.trajectory])
            noise = float(dynamics["noise"])
            if noise > 0:
                tracks = TrajectorySet(
                    [add_noise(t, noise, None if seed is None else seed + t.point_id) for t in tracks],
                    grid_size=tracks.grid_size,
                )
        except (DynamicsError, IngestionError, ValueError) as e:
            raise CommandError(str(e), EXIT_USAGE) from e

        stem = options.name or options.system
        results = write_trajectories(tracks, self.out_dir / f"{stem}.csv", truth.sidecar())
        for result in results.values():
            self.record(result)
        if truth.has_equations:
            self.write(f"x(t) = {truth.analytic_x}")
            self.write(f"y(t) = {truth.analytic_y}")
        return EXIT_OK
