# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Physical system specifications.

Parameter names per kind (SI units, angles in radians):

    spring_mass          mass, spring_constant, amplitude, phase, equilibrium_x, y0
    damped_spring_mass   as spring_mass plus damping (1/s, below the natural frequency)
    projectile           gravity, x0, y0, vx, vy
    two_body             mu, radius, phase, center_x, center_y
    single_pendulum      gravity, length, mass, theta0, omega0, pivot_x, pivot_y, damping
    double_pendulum      gravity, length1, length2, mass1, mass2, theta1, theta2,
                         omega1, omega2, pivot_x, pivot_y

Parameters missing from a spec are either drawn from the initial-state
ranges (when a seed is supplied) or taken from ``DEFAULT_PARAMETERS``.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np

logger = logging.getLogger(__name__)

SYSTEM_KINDS = (
    "spring_mass",
    "damped_spring_mass",
    "projectile",
    "two_body",
    "single_pendulum",
    "double_pendulum",
)
CLOSED_FORM_KINDS = ("spring_mass", "damped_spring_mass", "projectile", "two_body")
INTEGRATED_KINDS = ("single_pendulum", "double_pendulum")

DEFAULT_PIXEL_SCALE = 100.0
DEFAULT_PIXEL_OFFSET = (320.0, 240.0)
MAX_DOUBLE_PENDULUM_DURATION = 5.0

DEFAULT_PARAMETERS: Dict[str, Dict[str, float]] = {
    "spring_mass": {
        "mass": 1.0, "spring_constant": 4.0, "amplitude": 1.0, "phase": 0.0,
        "equilibrium_x": 0.0, "y0": 0.0,
    },
    "damped_spring_mass": {
        "mass": 1.0, "spring_constant": 4.0, "damping": 0.3, "amplitude": 1.0,
        "phase": 0.0, "equilibrium_x": 0.0, "y0": 0.0,
    },
    "projectile": {
        "gravity": 9.8, "x0": -2.0, "y0": 0.0, "vx": 1.0, "vy": 3.0,
    },
    "two_body": {
        "mu": 1.0, "radius": 1.0, "phase": 0.0, "center_x": 0.0, "center_y": 0.0,
    },
    "single_pendulum": {
        "gravity": 9.8, "length": 1.0, "mass": 1.0, "theta0": 0.3, "omega0": 0.0,
        "pivot_x": 0.0, "pivot_y": 0.0, "damping": 0.0,
    },
    "double_pendulum": {
        "gravity": 9.8, "length1": 1.0, "length2": 1.0, "mass1": 1.0, "mass2": 1.0,
        "theta1": 1.0, "theta2": 0.5, "omega1": 0.0, "omega2": 0.0,
        "pivot_x": 0.0, "pivot_y": 0.0,
    },
}

# (low, high) ranges for initial states drawn by sample_system_spec
DEFAULT_INITIAL_STATE_RANGES: Dict[str, Dict[str, Tuple[float, float]]] = {
    "spring_mass": {"amplitude": (0.5, 1.5), "phase": (0.0, 2 * math.pi)},
    "damped_spring_mass": {"amplitude": (0.5, 1.5), "phase": (0.0, 2 * math.pi)},
    "projectile": {"x0": (-2.5, -1.5), "vx": (0.5, 1.5), "vy": (2.0, 4.0)},
    "two_body": {"radius": (0.8, 1.5), "phase": (0.0, 2 * math.pi)},
    "single_pendulum": {"theta0": (0.2, 0.8)},
    "double_pendulum": {"theta1": (0.5, 1.5), "theta2": (0.2, 1.0)},
}

_POSITIVE = {
    "spring_mass": ("mass", "spring_constant"),
    "damped_spring_mass": ("mass", "spring_constant"),
    "projectile": ("gravity",),
    "two_body": ("mu", "radius"),
    "single_pendulum": ("gravity", "length", "mass"),
    "double_pendulum": ("gravity", "length1", "length2", "mass1", "mass2"),
}


class DynamicsError(Exception):
    """Base exception for the dynamics generators."""
    pass


class SystemSpecError(DynamicsError):
    """Raised for an invalid system specification."""
    pass


class IntegrationError(DynamicsError):
    """Raised when the energy-drift guard trips."""
    pass


@dataclass(frozen=True)
class SystemSpec:
    """A physical system to simulate.

    Attributes:
        kind: One of SYSTEM_KINDS
        parameters: Named physical parameters; missing ones are filled in
        duration: Seconds to simulate
        sample_rate: Samples per second
        pixel_scale: Pixels per metre
        pixel_offset: Pixel position of the world origin
    """
    kind: str
    parameters: Mapping[str, float] = field(default_factory=dict)
    duration: float = 5.0
    sample_rate: float = 30.0
    pixel_scale: float = DEFAULT_PIXEL_SCALE
    pixel_offset: Tuple[float, float] = DEFAULT_PIXEL_OFFSET

    def __post_init__(self):
        if self.kind not in SYSTEM_KINDS:
            raise SystemSpecError(f"Unknown system kind {self.kind!r}")
        if not self.duration > 0:
            raise SystemSpecError(f"duration must be positive, got {self.duration}")
        if not self.sample_rate > 0:
            raise SystemSpecError(f"sample_rate must be positive, got {self.sample_rate}")
        if not self.pixel_scale > 0:
            raise SystemSpecError(f"pixel_scale must be positive, got {self.pixel_scale}")
        unknown = set(self.parameters) - set(DEFAULT_PARAMETERS[self.kind])
        if unknown:
            raise SystemSpecError(f"Unknown parameters for {self.kind}: {sorted(unknown)}")
        for name, value in self.parameters.items():
            if not math.isfinite(float(value)):
                raise SystemSpecError(f"{name} must be finite")
        for name in _POSITIVE[self.kind]:
            if name in self.parameters and not float(self.parameters[name]) > 0:
                raise SystemSpecError(f"{name} must be positive for {self.kind}")
        if self.kind == "double_pendulum" and self.duration > MAX_DOUBLE_PENDULUM_DURATION:
            raise SystemSpecError(
                f"double_pendulum duration is limited to {MAX_DOUBLE_PENDULUM_DURATION} s"
            )
        object.__setattr__(self, "parameters", dict(self.parameters))
        object.__setattr__(self, "pixel_offset", tuple(float(v) for v in self.pixel_offset))

    @property
    def n_samples(self) -> int:
        return int(math.floor(self.duration * self.sample_rate + 1e-9)) + 1

    @property
    def t_values(self) -> np.ndarray:
        return np.arange(self.n_samples) / self.sample_rate

    def resolved_parameters(self, seed: Optional[int] = None, ranges=None) -> Dict[str, float]:
        """Complete parameter set, drawing missing initial states when seeded.

        Raises:
            SystemSpecError: If the damped system is not underdamped
        """
        resolved = dict(DEFAULT_PARAMETERS[self.kind])
        if seed is not None:
            resolved.update(draw_initial_state(self.kind, seed, ranges))
        resolved.update({name: float(value) for name, value in self.parameters.items()})
        if self.kind == "damped_spring_mass":
            omega = math.sqrt(resolved["spring_constant"] / resolved["mass"])
            if not 0 <= resolved["damping"] < omega:
                raise SystemSpecError(
                    f"damping must lie in [0, {omega:g}) for an underdamped oscillator"
                )
        return resolved

    def to_dict(self) -> Dict:
        return {
            "kind": self.kind,
            "parameters": dict(self.parameters),
            "duration": self.duration,
            "sample_rate": self.sample_rate,
            "pixel_scale": self.pixel_scale,
            "pixel_offset": list(self.pixel_offset),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SystemSpec":
        return cls(
            kind=data["kind"],
            parameters=data.get("parameters", {}),
            duration=float(data.get("duration", 5.0)),
            sample_rate=float(data.get("sample_rate", 30.0)),
            pixel_scale=float(data.get("pixel_scale", DEFAULT_PIXEL_SCALE)),
            pixel_offset=tuple(data.get("pixel_offset", DEFAULT_PIXEL_OFFSET)),
        )


def draw_initial_state(
    kind: str,
    seed: int,
    ranges: Optional[Mapping[str, Mapping[str, Sequence[float]]]] = None,
) -> Dict[str, float]:
    """Draw the initial-state parameters of ``kind`` uniformly from ``ranges``."""
    kind_ranges = dict(DEFAULT_INITIAL_STATE_RANGES.get(kind, {}))
    if ranges and kind in ranges:
        kind_ranges.update(ranges[kind])
    rng = np.random.default_rng(seed)
    drawn = {}
    for name in sorted(kind_ranges):
        low, high = kind_ranges[name]
        drawn[name] = float(rng.uniform(low, high))
    return drawn


def sample_system_spec(
    kind: str,
    seed: int,
    ranges: Optional[Mapping[str, Mapping[str, Sequence[float]]]] = None,
    **spec_fields,
) -> SystemSpec:
    """A spec whose initial state is drawn from ``ranges`` with ``seed``.

    ``spec_fields`` are passed to SystemSpec (duration, sample_rate, ...);
    a ``parameters`` entry there overrides drawn values.
    """
    parameters = draw_initial_state(kind, seed, ranges)
    parameters.update(spec_fields.pop("parameters", {}) or {})
    return SystemSpec(kind=kind, parameters=parameters, **spec_fields)
