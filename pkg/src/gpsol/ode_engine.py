"""Fixed-step integrators for small parameter ODE systems.

Two fourth-order schemes: classical RK4 and an Adams-Bashforth-Moulton
predictor-corrector (single PECE pass, RK4 bootstrap for the first three
steps).  The step kernels are dimension-agnostic so the PDE engine reuses
them on full complex fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError, InstabilityError

__all__ = [
    "OdeSystem",
    "OdeTrajectory",
    "rk4_integrate",
    "abm4_integrate",
    "rk4_step",
]

Rhs = Callable[[float, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class OdeSystem:
    """A first-order system y' = rhs(t, y) of fixed dimension."""

    dimension: int
    rhs: Rhs

    def __post_init__(self):
        if self.dimension < 1:
            raise ConfigurationError("OdeSystem needs dimension >= 1")
        if not callable(self.rhs):
            raise ConfigurationError("OdeSystem needs a callable rhs")


@dataclass
class OdeTrajectory:
    """States at uniformly spaced times, including the initial state."""

    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if self.times.shape[0] != self.states.shape[0]:
            raise ConfigurationError("trajectory times and states disagree in length")


def rk4_step(rhs: Rhs, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step from t to t + dt."""
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1)
    k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _step_count(t0: float, t_end: float, dt: float) -> int:
    if not dt > 0.0:
        raise ConfigurationError(f"step size must be positive, got {dt}")
    span = t_end - t0
    if not span > 0.0:
        raise ConfigurationError(f"integration span must be positive, got {span}")
    n = int(round(span / dt))
    if n < 1 or abs(n * dt - span) > 1e-9 * max(1.0, abs(span)):
        raise ConfigurationError(
            f"span {span} is not an integer multiple of dt {dt}"
        )
    return n


def _prepare(system: OdeSystem, y0: np.ndarray) -> np.ndarray:
    y = np.asarray(y0, dtype=np.float64)
    if y.shape != (system.dimension,):
        raise ConfigurationError(
            f"initial state needs shape ({system.dimension},), got {y.shape}"
        )
    if not np.all(np.isfinite(y)):
        raise ConfigurationError("initial state must be finite")
    return y.copy()


def rk4_integrate(system: OdeSystem, y0: np.ndarray, t0: float, t_end: float, dt: float) -> OdeTrajectory:
    """Integrate with RK4, recording every step."""
    y = _prepare(system, y0)
    n = _step_count(t0, t_end, dt)
    times = t0 + dt * np.arange(n + 1)
    states = np.empty((n + 1, system.dimension))
    states[0] = y
    for k in range(n):
        y = rk4_step(system.rhs, times[k], y, dt)
        if not np.all(np.isfinite(y)):
            raise InstabilityError(
                f"non-finite state at t = {times[k + 1]:g}", t_fail=float(times[k + 1])
            )
        states[k + 1] = y
    return OdeTrajectory(times=times, states=states)


# Adams-Bashforth (predictor) and Adams-Moulton (corrector) weights, dt/24 units.
_AB4 = np.array([55.0, -59.0, 37.0, -9.0]) / 24.0
_AM4 = np.array([9.0, 19.0, -5.0, 1.0]) / 24.0


def abm4_integrate(system: OdeSystem, y0: np.ndarray, t0: float, t_end: float, dt: float) -> OdeTrajectory:
    """Integrate with the ABM predictor-corrector, single PECE pass per step.

    The first three steps are bootstrapped with RK4 so the multistep
    history is available at full order.
    """
    y = _prepare(system, y0)
    n = _step_count(t0, t_end, dt)
    times = t0 + dt * np.arange(n + 1)
    states = np.empty((n + 1, system.dimension))
    states[0] = y

    rhs = system.rhs
    hist = [rhs(times[0], y)]  # newest first: f_k, f_{k-1}, ...
    n_boot = min(3, n)
    for k in range(n_boot):
        y = rk4_step(rhs, times[k], y, dt)
        if not np.all(np.isfinite(y)):
            raise InstabilityError(
                f"non-finite state at t = {times[k + 1]:g}", t_fail=float(times[k + 1])
            )
        states[k + 1] = y
        hist.insert(0, rhs(times[k + 1], y))

    for k in range(n_boot, n):
        f0, f1, f2, f3 = hist[0], hist[1], hist[2], hist[3]
        y_pred = y + dt * (_AB4[0] * f0 + _AB4[1] * f1 + _AB4[2] * f2 + _AB4[3] * f3)
        f_pred = rhs(times[k + 1], y_pred)
        y = y + dt * (_AM4[0] * f_pred + _AM4[1] * f0 + _AM4[2] * f1 + _AM4[3] * f2)
        if not np.all(np.isfinite(y)):
            raise InstabilityError(
                f"non-finite state at t = {times[k + 1]:g}", t_fail=float(times[k + 1])
            )
        states[k + 1] = y
        hist.insert(0, rhs(times[k + 1], y))
        hist.pop()

    return OdeTrajectory(times=times, states=states)
