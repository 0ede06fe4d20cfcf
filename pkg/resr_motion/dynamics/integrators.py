# SPDX-FileCopyrightText: (C) resr-motion contributors
#
# SPDX-License-Identifier: AGPL-3.0-or-later

"""Fixed-step RK4 integration of the pendulum equations of motion.

State vectors:
    single pendulum  [theta, omega]
    double pendulum  [theta1, omega1, theta2, omega2]

Angles are measured from the downward vertical.
"""

from typing import Callable, Mapping, Optional, Tuple

import numpy as np

from .systems import IntegrationError

# integrator steps per output sample
SUBSTEPS_PER_SAMPLE = 20

Derivative = Callable[[float, np.ndarray], np.ndarray]


def rk4_step(f: Derivative, t: float, y: np.ndarray, h: float) -> np.ndarray:
    k1 = f(t, y)
    k2 = f(t + h / 2, y + h / 2 * k1)
    k3 = f(t + h / 2, y + h / 2 * k2)
    k4 = f(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_integrate(
    f: Derivative,
    y0,
    h: float,
    n_steps: int,
    sample_every: int = 1,
) -> np.ndarray:
    """Integrate ``y' = f(t, y)`` from t = 0 with fixed step ``h``.

    Returns:
        Array of shape (n_steps // sample_every + 1, len(y0)) holding the
        initial state and every ``sample_every``-th state after it
    """
    y = np.array(y0, dtype=float)
    samples = [y.copy()]
    for step in range(1, n_steps + 1):
        y = rk4_step(f, (step - 1) * h, y, h)
        if step % sample_every == 0:
            samples.append(y.copy())
    return np.array(samples)


def single_pendulum_derivative(params: Mapping[str, float]) -> Derivative:
    g_over_l = params["gravity"] / params["length"]
    damping = params.get("damping", 0.0)

    def derivative(t: float, state: np.ndarray) -> np.ndarray:
        theta, omega = state
        return np.array([omega, -g_over_l * np.sin(theta) - damping * omega])

    return derivative


def double_pendulum_derivative(params: Mapping[str, float]) -> Derivative:
    g = params["gravity"]
    l1, l2 = params["length1"], params["length2"]
    m1, m2 = params["mass1"], params["mass2"]

    def derivative(t: float, state: np.ndarray) -> np.ndarray:
        theta1, omega1, theta2, omega2 = state
        delta = theta2 - theta1
        den1 = (m1 + m2) * l1 - m2 * l1 * np.cos(delta) ** 2
        den2 = (l2 / l1) * den1
        alpha1 = (
            m2 * l1 * omega1 ** 2 * np.sin(delta) * np.cos(delta)
            + m2 * g * np.sin(theta2) * np.cos(delta)
            + m2 * l2 * omega2 ** 2 * np.sin(delta)
            - (m1 + m2) * g * np.sin(theta1)
        ) / den1
        alpha2 = (
            -m2 * l2 * omega2 ** 2 * np.sin(delta) * np.cos(delta)
            + (m1 + m2) * g * np.sin(theta1) * np.cos(delta)
            - (m1 + m2) * l1 * omega1 ** 2 * np.sin(delta)
            - (m1 + m2) * g * np.sin(theta2)
        ) / den2
        return np.array([omega1, alpha1, omega2, alpha2])

    return derivative


def _substeps(sample_rate: float, step: Optional[float]) -> int:
    if step is None:
        return SUBSTEPS_PER_SAMPLE
    substeps = int(round(1.0 / (sample_rate * step)))
    if substeps < 1 or abs(substeps * step * sample_rate - 1.0) > 1e-9:
        raise IntegrationError(
            f"step {step} does not divide the sample interval {1.0 / sample_rate}"
        )
    return substeps


def _simulate(
    derivative: Derivative,
    y0,
    duration: float,
    sample_rate: float,
    step: Optional[float],
) -> Tuple[np.ndarray, np.ndarray]:
    substeps = _substeps(sample_rate, step)
    n_samples = int(np.floor(duration * sample_rate + 1e-9)) + 1
    h = 1.0 / (sample_rate * substeps)
    states = rk4_integrate(derivative, y0, h, (n_samples - 1) * substeps, substeps)
    return np.arange(n_samples) / sample_rate, states


def simulate_single_pendulum(
    params: Mapping[str, float],
    duration: float,
    sample_rate: float,
    step: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Sample times and [theta, omega] states of a single pendulum.

    ``step`` defaults to 1 / (20 * sample_rate) and must divide the sample
    interval evenly.
    """
    y0 = [params["theta0"], params.get("omega0", 0.0)]
    return _simulate(single_pendulum_derivative(params), y0, duration, sample_rate, step)


def simulate_double_pendulum(
    params: Mapping[str, float],
    duration: float,
    sample_rate: float,
    step: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Sample times and [theta1, omega1, theta2, omega2] states."""
    y0 = [
        params["theta1"],
        params.get("omega1", 0.0),
        params["theta2"],
        params.get("omega2", 0.0),
    ]
    return _simulate(double_pendulum_derivative(params), y0, duration, sample_rate, step)


def pendulum_energy(states: np.ndarray, params: Mapping[str, float]) -> np.ndarray:
    """Total mechanical energy of a single pendulum per sample (joules)."""
    theta, omega = states[:, 0], states[:, 1]
    m, g, length = params["mass"], params["gravity"], params["length"]
    return m * (0.5 * length ** 2 * omega ** 2 - g * length * np.cos(theta))


def double_pendulum_energy(states: np.ndarray, params: Mapping[str, float]) -> np.ndarray:
    """Total mechanical energy of a double pendulum per sample (joules)."""
    theta1, omega1, theta2, omega2 = states.T
    g = params["gravity"]
    l1, l2 = params["length1"], params["length2"]
    m1, m2 = params["mass1"], params["mass2"]
    kinetic = (
        0.5 * (m1 + m2) * l1 ** 2 * omega1 ** 2
        + 0.5 * m2 * l2 ** 2 * omega2 ** 2
        + m2 * l1 * l2 * omega1 * omega2 * np.cos(theta1 - theta2)
    )
    potential = -(m1 + m2) * g * l1 * np.cos(theta1) - m2 * g * l2 * np.cos(theta2)
    return kinetic + potential


def energy_scale(kind: str, params: Mapping[str, float]) -> float:
    """Reference energy that drift is measured against."""
    g = params["gravity"]
    if kind == "single_pendulum":
        return params["mass"] * g * params["length"]
    return (params["mass1"] + params["mass2"]) * g * params["length1"] + (
        params["mass2"] * g * params["length2"]
    )


def relative_energy_drift(energy: np.ndarray, scale: float) -> float:
    """Largest deviation from the initial energy, relative to max(|E0|, scale)."""
    reference = max(abs(float(energy[0])), scale)
    return float(np.max(np.abs(energy - energy[0])) / reference)
