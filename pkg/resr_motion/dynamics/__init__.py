# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Synthetic trajectories of simple mechanical systems."""

from .generate import (
    GroundTruth,
    add_noise,
    analytic_equation,
    generate,
    synthesize_tracks,
)
from .integrators import (
    double_pendulum_energy,
    pendulum_energy,
    relative_energy_drift,
    rk4_integrate,
    simulate_double_pendulum,
    simulate_single_pendulum,
)
from .systems import (
    CLOSED_FORM_KINDS,
    DEFAULT_INITIAL_STATE_RANGES,
    DEFAULT_PARAMETERS,
    SYSTEM_KINDS,
    DynamicsError,
    IntegrationError,
    SystemSpec,
    SystemSpecError,
    draw_initial_state,
    sample_system_spec,
)

__all__ = [
    "GroundTruth",
    "add_noise",
    "analytic_equation",
    "generate",
    "synthesize_tracks",
    "double_pendulum_energy",
    "pendulum_energy",
    "relative_energy_drift",
    "rk4_integrate",
    "simulate_double_pendulum",
    "simulate_single_pendulum",
    "CLOSED_FORM_KINDS",
    "DEFAULT_INITIAL_STATE_RANGES",
    "DEFAULT_PARAMETERS",
    "SYSTEM_KINDS",
    "DynamicsError",
    "IntegrationError",
    "SystemSpec",
    "SystemSpecError",
    "draw_initial_state",
    "sample_system_spec",
]
