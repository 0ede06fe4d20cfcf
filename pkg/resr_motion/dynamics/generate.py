# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Ground-truth trajectory generation.

Closed-form systems are sampled from their analytic solutions; pendulums are
integrated with RK4. World coordinates (metres) are mapped to pixels with
``px = scale * x + offset_x`` and ``py = scale * y + offset_y``.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..expr import Expr, binary, const, unary, var
from ..ingestion import Trajectory, TrajectorySet
from .integrators import (
    double_pendulum_energy,
    energy_scale,
    pendulum_energy,
    relative_energy_drift,
    simulate_double_pendulum,
    simulate_single_pendulum,
)
from .systems import CLOSED_FORM_KINDS, IntegrationError, SystemSpec

logger = logging.getLogger(__name__)

DEFAULT_DRIFT_TOLERANCE = 0.01


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """A generated trajectory with its analytic equations, when they exist.

    Attributes:
        trajectory: Pixel-space samples (point_id 0)
        analytic_x: x(t) in pixels, closed-form systems only
        analytic_y: y(t) in pixels, closed-form systems only
        spec: The system that was generated
        parameters: Fully resolved physical parameters
        states: World-space state arrays by name (positions, velocities, angles)
    """
    trajectory: Trajectory
    analytic_x: Optional[Expr]
    analytic_y: Optional[Expr]
    spec: SystemSpec
    parameters: Dict[str, float] = field(default_factory=dict)
    states: Dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def has_equations(self) -> bool:
        return self.analytic_x is not None and self.analytic_y is not None

    def sidecar(self) -> Dict:
        """Metadata written next to a generated trajectory file."""
        return {
            "system": self.spec.to_dict(),
            "resolved_parameters": dict(self.parameters),
            "analytic_x": str(self.analytic_x) if self.analytic_x is not None else None,
            "analytic_y": str(self.analytic_y) if self.analytic_y is not None else None,
        }


def _scaled(e: Expr, factor: float) -> Expr:
    if factor == 1.0:
        return e
    return binary("mul", const(factor), e)


def _times_t(coefficient: float) -> Expr:
    return _scaled(var(), coefficient)


def _shifted(e: Expr, offset: float) -> Expr:
    if offset == 0.0:
        return e
    if offset < 0:
        return binary("sub", e, const(-offset))
    return binary("add", e, const(offset))


def _harmonic(amplitude: float, omega: float, phase: float, func: str = "cos") -> Expr:
    """``amplitude * func(omega * t + phase)`` without identity terms."""
    return _scaled(unary(func, _shifted(_times_t(omega), phase)), amplitude)


def _polynomial(coefficients: Sequence[float]) -> Expr:
    """``c0 + c1 * t + c2 * t ^ 2`` without zero or unit terms."""
    terms: List[Tuple[float, Optional[Expr]]] = []
    for power, coefficient in enumerate(coefficients):
        if coefficient == 0.0:
            continue
        if power == 0:
            basis = None
        elif power == 1:
            basis = var()
        else:
            basis = binary("pow", var(), const(power))
        terms.append((coefficient, basis))
    if not terms:
        return const(0.0)

    def term(coefficient: float, basis: Optional[Expr]) -> Expr:
        return const(coefficient) if basis is None else _scaled(basis, coefficient)

    first_coefficient, first_basis = terms[0]
    result = term(first_coefficient, first_basis)
    for coefficient, basis in terms[1:]:
        op = "add" if coefficient > 0 else "sub"
        result = binary(op, result, term(abs(coefficient), basis))
    return result


def analytic_equation(spec: SystemSpec, seed: Optional[int] = None) -> Optional[Tuple[Expr, Expr]]:
    """Pixel-space (x(t), y(t)) expressions, or None for pendulum systems."""
    if spec.kind not in CLOSED_FORM_KINDS:
        return None
    p = spec.resolved_parameters(seed)
    s = spec.pixel_scale
    ox, oy = spec.pixel_offset

    if spec.kind == "spring_mass":
        omega = math.sqrt(p["spring_constant"] / p["mass"])
        x = _shifted(_harmonic(s * p["amplitude"], omega, p["phase"]), s * p["equilibrium_x"] + ox)
        y = const(s * p["y0"] + oy)
    elif spec.kind == "damped_spring_mass":
        omega = math.sqrt(p["spring_constant"] / p["mass"])
        omega_d = math.sqrt(omega ** 2 - p["damping"] ** 2)
        envelope = unary("exp", _times_t(-p["damping"]))
        oscillation = unary("cos", _shifted(_times_t(omega_d), p["phase"]))
        x = _shifted(
            binary("mul", _scaled(envelope, s * p["amplitude"]), oscillation),
            s * p["equilibrium_x"] + ox,
        )
        y = const(s * p["y0"] + oy)
    elif spec.kind == "projectile":
        x = _polynomial([s * p["x0"] + ox, s * p["vx"]])
        y = _polynomial([s * p["y0"] + oy, s * p["vy"], -s * p["gravity"] / 2])
    else:
        omega = math.sqrt(p["mu"] / p["radius"] ** 3)
        x = _shifted(_harmonic(s * p["radius"], omega, p["phase"], "cos"), s * p["center_x"] + ox)
        y = _shifted(_harmonic(s * p["radius"], omega, p["phase"], "sin"), s * p["center_y"] + oy)
    return x, y


def _closed_form_states(kind: str, p: Dict[str, float], t: np.ndarray) -> Dict[str, np.ndarray]:
    if kind == "spring_mass":
        omega = math.sqrt(p["spring_constant"] / p["mass"])
        angle = omega * t + p["phase"]
        return {
            "x": p["amplitude"] * np.cos(angle) + p["equilibrium_x"],
            "y": np.full(t.shape, p["y0"]),
            "vx": -p["amplitude"] * omega * np.sin(angle),
        }
    if kind == "damped_spring_mass":
        omega = math.sqrt(p["spring_constant"] / p["mass"])
        gamma = p["damping"]
        omega_d = math.sqrt(omega ** 2 - gamma ** 2)
        angle = omega_d * t + p["phase"]
        envelope = p["amplitude"] * np.exp(-gamma * t)
        return {
            "x": envelope * np.cos(angle) + p["equilibrium_x"],
            "y": np.full(t.shape, p["y0"]),
            "vx": -envelope * (gamma * np.cos(angle) + omega_d * np.sin(angle)),
        }
    if kind == "projectile":
        return {
            "x": p["x0"] + p["vx"] * t,
            "y": p["y0"] + p["vy"] * t - 0.5 * p["gravity"] * t ** 2,
            "vx": np.full(t.shape, p["vx"]),
            "vy": p["vy"] - p["gravity"] * t,
        }
    omega = math.sqrt(p["mu"] / p["radius"] ** 3)
    angle = omega * t + p["phase"]
    return {
        "x": p["radius"] * np.cos(angle) + p["center_x"],
        "y": p["radius"] * np.sin(angle) + p["center_y"],
    }


def _pendulum_states(spec: SystemSpec, p: Dict[str, float], tolerance: float) -> Dict[str, np.ndarray]:
    if spec.kind == "single_pendulum":
        _, states = simulate_single_pendulum(p, spec.duration, spec.sample_rate)
        theta, omega = states[:, 0], states[:, 1]
        result = {
            "theta": theta,
            "omega": omega,
            "x": p["pivot_x"] + p["length"] * np.sin(theta),
            "y": p["pivot_y"] - p["length"] * np.cos(theta),
        }
        energy = pendulum_energy(states, p)
        undamped = p.get("damping", 0.0) == 0.0
    else:
        _, states = simulate_double_pendulum(p, spec.duration, spec.sample_rate)
        theta1, omega1, theta2, omega2 = states.T
        result = {
            "theta1": theta1,
            "omega1": omega1,
            "theta2": theta2,
            "omega2": omega2,
            "x": p["pivot_x"] + p["length1"] * np.sin(theta1) + p["length2"] * np.sin(theta2),
            "y": p["pivot_y"] - p["length1"] * np.cos(theta1) - p["length2"] * np.cos(theta2),
        }
        energy = double_pendulum_energy(states, p)
        undamped = True

    if undamped:
        drift = relative_energy_drift(energy, energy_scale(spec.kind, p))
        logger.debug(f"{spec.kind} energy drift {drift:.3e}")
        if drift > tolerance:
            raise IntegrationError(
                f"{spec.kind}: energy drift {drift:.3%} exceeds {tolerance:.3%}; "
                "lower the step by raising the sample rate"
            )
    return result


def generate(
    spec: SystemSpec,
    seed: Optional[int] = None,
    drift_tolerance: float = DEFAULT_DRIFT_TOLERANCE,
) -> GroundTruth:
    """Generate the ground-truth trajectory of ``spec``.

    Args:
        spec: System to simulate
        seed: Draws initial-state parameters the SystemSpec leaves unset
        drift_tolerance: Relative energy drift allowed for undamped pendulums

    Raises:
        IntegrationError: If the energy-drift guard trips
    """
    parameters = spec.resolved_parameters(seed)
    t = spec.t_values
    if spec.kind in CLOSED_FORM_KINDS:
        states = _closed_form_states(spec.kind, parameters, t)
        equations = analytic_equation(spec, seed)
    else:
        states = _pendulum_states(spec, parameters, drift_tolerance)
        equations = None

    ox, oy = spec.pixel_offset
    trajectory = Trajectory(
        point_id=0,
        t=t,
        x=spec.pixel_scale * states["x"] + ox,
        y=spec.pixel_scale * states["y"] + oy,
        fps=spec.sample_rate,
    )
    analytic_x, analytic_y = equations if equations else (None, None)
    logger.info(f"Generated {spec.kind}: {len(trajectory)} samples over {spec.duration} s")
    return GroundTruth(trajectory, analytic_x, analytic_y, spec, parameters, states)


def add_noise(trajectory: Trajectory, sigma: float, seed: Optional[int] = None) -> Trajectory:
    """Add i.i.d. Gaussian pixel noise; ``sigma == 0`` returns the input."""
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    if sigma == 0:
        return trajectory
    rng = np.random.default_rng(seed)
    noise = rng.normal(0.0, sigma, size=(2, len(trajectory)))
    return trajectory.with_coordinates(trajectory.x + noise[0], trajectory.y + noise[1])


def synthesize_tracks(
    ground_truth: GroundTruth,
    grid_size: int,
    image_size: Tuple[float, float] = (640.0, 480.0),
    object_points: int = 4,
    seed: Optional[int] = None,
    jitter: float = 0.0,
) -> TrajectorySet:
    """Emulate point-tracker output on an M x M query grid.

    The ``object_points`` grid points nearest the object's first position
    move rigidly with it; the others stay put. Point ids run row-major.
    """
    if grid_size < 1:
        raise ValueError(f"grid_size must be positive, got {grid_size}")
    width, height = image_size
    source = ground_truth.trajectory
    dx = source.x - source.x[0]
    dy = source.y - source.y[0]

    ids = np.arange(grid_size * grid_size)
    grid_x = (ids % grid_size + 0.5) * width / grid_size
    grid_y = (ids // grid_size + 0.5) * height / grid_size
    distance = np.hypot(grid_x - source.x[0], grid_y - source.y[0])
    moving = set(np.lexsort((ids, distance))[:object_points].tolist())

    rng = np.random.default_rng(seed)
    trajectories = []
    for point_id in ids.tolist():
        if point_id in moving:
            x = grid_x[point_id] + dx
            y = grid_y[point_id] + dy
        else:
            x = np.full(len(source), grid_x[point_id])
            y = np.full(len(source), grid_y[point_id])
        if jitter > 0:
            x = x + rng.normal(0.0, jitter, len(source))
            y = y + rng.normal(0.0, jitter, len(source))
        trajectories.append(Trajectory(point_id, source.t, x, y, source.fps))
    return TrajectorySet(trajectories, grid_size=grid_size)
