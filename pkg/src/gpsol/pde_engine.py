"""Method-of-lines evolution of the three governing field equations.

Variants (all first order in time, written for the time derivative):

  original-psi             i dPsi/dt = -1/2 Psi_xx + s g |Psi|^2 Psi
  transformed-bright       i du/dt   = -1/2 u_xx  -   |u|^2 u       + P[u]
  transformed-dark-rotated i du/dt   = -1/2 u_xx  +  (|u|^2 - 1) u  + P[u]

with P[u] = V_eff u - coef du/dx from the inhomogeneity profile.  Space is
discretized with the fourth-order stencils of grid_field; the two outermost
points on each side are clamped to their initial values (their time
derivative is forced to zero), which doubles as the boundary condition.

Explicit steppers need dt <= 0.4 dx^2 for the dispersion term; evolve
enforces that bound up front.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConfigurationError, InstabilityError
from .grid_field import ComplexField, SpatialGrid, simpson
from .inhomogeneity import InhomogeneityProfile
from .ode_engine import rk4_step, _AB4, _AM4

__all__ = [
    "VARIANTS",
    "STEPPERS",
    "STABILITY_FACTOR",
    "EvolutionProblem",
    "PdeTrajectory",
    "rhs",
    "evolve",
    "conserved_quantities",
]

VARIANTS = ("original-psi", "transformed-bright", "transformed-dark-rotated")
STEPPERS = ("rk4", "abm4")
STABILITY_FACTOR = 0.4  # dt <= STABILITY_FACTOR * dx^2

_VARIANT_S = {"transformed-bright": -1, "transformed-dark-rotated": +1}


@dataclass
class EvolutionProblem:
    """One governing equation on one grid with one interaction profile."""

    variant: str
    profile: InhomogeneityProfile
    grid: SpatialGrid
    s: int | None = None
    boundary: str = "clamped-edges"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ConfigurationError(f"unknown variant {self.variant!r}")
        if self.boundary != "clamped-edges":
            raise ConfigurationError(f"unsupported boundary {self.boundary!r}")
        if not self.profile.contains(self.grid.x_min, self.grid.x_max):
            raise ConfigurationError("profile does not cover the grid")
        if self.variant == "original-psi":
            if self.s not in (-1, 1):
                raise ConfigurationError("original-psi needs s = +1 or -1")
        else:
            implied = _VARIANT_S[self.variant]
            if self.s is None:
                self.s = implied
            elif self.s != implied:
                raise ConfigurationError(
                    f"{self.variant} implies s = {implied}, got {self.s}"
                )
        x = self.grid.x
        self._g = np.asarray(self.profile.g(x), dtype=np.float64)
        self._inv_g = 1.0 / self._g
        # the transformation-induced terms belong to the u frames only;
        # the psi frame keeps the bare interaction profile instead
        self._adv = None
        self._veff = None
        if self.variant != "original-psi":
            adv = np.asarray(self.profile.advection_coef(x), dtype=np.float64)
            if np.any(adv != 0.0):
                self._adv = adv
            if self.profile.kind == "generic":
                veff = -0.5 * np.asarray(self.profile.potential_coef(x), dtype=np.float64)
                if np.any(veff != 0.0):
                    self._veff = veff


def _make_rhs(problem: EvolutionProblem):
    """Array-level du/dt closure with clamped boundary rows."""
    dx = problem.grid.dx
    c2 = 1.0 / (12.0 * dx * dx)
    c1 = 1.0 / (12.0 * dx)
    variant = problem.variant
    s = problem.s
    g_int = problem._g[2:-2]
    adv = problem._adv
    adv_int = adv[2:-2] if adv is not None else None
    veff = problem._veff
    veff_int = veff[2:-2] if veff is not None else None

    def rhs_array(t: float, u: np.ndarray) -> np.ndarray:
        ui = u[2:-2]
        lap = (-u[:-4] + 16.0 * u[1:-3] - 30.0 * ui
               + 16.0 * u[3:-1] - u[4:]) * c2
        dens = ui.real ** 2 + ui.imag ** 2
        if variant == "original-psi":
            interior = 0.5 * lap - s * (g_int * dens) * ui
        elif variant == "transformed-bright":
            interior = 0.5 * lap + dens * ui
        else:  # transformed-dark-rotated
            interior = 0.5 * lap - (dens - 1.0) * ui
        if adv_int is not None:
            du = (u[:-4] - 8.0 * u[1:-3] + 8.0 * u[3:-1] - u[4:]) * c1
            interior = interior + adv_int * du
        if veff_int is not None:
            interior = interior - veff_int * ui
        out = np.zeros_like(u)
        out[2:-2] = 1j * interior
        return out

    return rhs_array


def rhs(problem: EvolutionProblem, field: ComplexField, t: float = 0.0) -> ComplexField:
    """Time derivative of the field under the problem's equation.

    The clamped rows (two outermost points per side) report zero.
    """
    if field.grid is not problem.grid and field.grid != problem.grid:
        raise ConfigurationError("field grid differs from problem grid")
    return ComplexField(problem.grid, _make_rhs(problem)(t, field.values))


def conserved_quantities(problem: EvolutionProblem, field: ComplexField) -> dict[str, float]:
    """The conserved norm of the variant's frame.

    original-psi conserves N_psi = integral |Psi|^2; the transformed
    variants conserve N_w = integral |u|^2 / g.
    """
    dens = field.values.real ** 2 + field.values.imag ** 2
    if problem.variant == "original-psi":
        return {"N_psi": simpson(dens, problem.grid.dx)}
    return {"N_w": simpson(dens * problem._inv_g, problem.grid.dx)}


@dataclass
class PdeTrajectory:
    """Field snapshots at a uniform sampling cadence plus conserved values."""

    times: np.ndarray
    fields: np.ndarray
    conserved: np.ndarray
    conserved_name: str
    norm_drift_warning: bool = False

    def __post_init__(self):
        ns = self.times.shape[0]
        if self.fields.shape[0] != ns or self.conserved.shape[0] != ns:
            raise ConfigurationError("trajectory arrays disagree in length")

    def field_at(self, grid: SpatialGrid, index: int) -> ComplexField:
        return ComplexField(grid, self.fields[index].copy())


def evolve(
    problem: EvolutionProblem,
    field0: ComplexField,
    t0: float,
    t_end: float,
    dt: float,
    sample_every: int,
    stepper: str = "rk4",
    norm_drift_tol: float = 1e-6,
) -> PdeTrajectory:
    """March the field from t0 to t_end, sampling every sample_every steps.

    The step count (t_end - t0)/dt must be an integer multiple of
    sample_every.  Non-finite samples abort with InstabilityError carrying
    the detection time; a relative drift of the conserved norm beyond
    norm_drift_tol sets the trajectory's warning flag.
    """
    if stepper not in STEPPERS:
        raise ConfigurationError(f"unknown stepper {stepper!r}")
    dx = problem.grid.dx
    bound = STABILITY_FACTOR * dx * dx
    if not 0.0 < dt <= bound * (1.0 + 1e-12):
        raise ConfigurationError(
            f"dt = {dt:g} violates the stability bound {bound:g} for dx = {dx:g}"
        )
    span = t_end - t0
    n_steps = int(round(span / dt))
    if n_steps < 1 or abs(n_steps * dt - span) > 1e-9 * max(1.0, abs(span)):
        raise ConfigurationError(f"span {span} is not an integer multiple of dt {dt}")
    sample_every = int(sample_every)
    if sample_every < 1 or n_steps % sample_every != 0:
        raise ConfigurationError(
            f"{n_steps} steps do not split into samples of {sample_every}"
        )
    if field0.grid != problem.grid:
        raise ConfigurationError("initial field grid differs from problem grid")

    rhs_array = _make_rhs(problem)
    inv_g = problem._inv_g
    is_psi = problem.variant == "original-psi"
    conserved_name = "N_psi" if is_psi else "N_w"

    def norm_of(u: np.ndarray) -> float:
        dens = u.real ** 2 + u.imag ** 2
        return simpson(dens if is_psi else dens * inv_g, dx)

    n_samples = n_steps // sample_every + 1
    times = t0 + (dt * sample_every) * np.arange(n_samples)
    fields = np.empty((n_samples, problem.grid.n_points), dtype=np.complex128)
    conserved = np.empty(n_samples)
    u = field0.values.copy()
    fields[0] = u
    conserved[0] = norm_of(u)

    hist: list[np.ndarray] = []  # abm4 derivative history, newest first

    with np.errstate(all="ignore"):
        for k in range(n_steps):
            t = t0 + k * dt
            if stepper == "rk4":
                u = rk4_step(rhs_array, t, u, dt)
            else:
                if not hist:
                    hist.append(rhs_array(t, u))
                if len(hist) < 4:
                    u = rk4_step(rhs_array, t, u, dt)
                    hist.insert(0, rhs_array(t + dt, u))
                else:
                    f0, f1, f2, f3 = hist[0], hist[1], hist[2], hist[3]
                    u_pred = u + dt * (_AB4[0] * f0 + _AB4[1] * f1
                                       + _AB4[2] * f2 + _AB4[3] * f3)
                    f_pred = rhs_array(t + dt, u_pred)
                    u = u + dt * (_AM4[0] * f_pred + _AM4[1] * f0
                                  + _AM4[2] * f1 + _AM4[3] * f2)
                    hist.insert(0, rhs_array(t + dt, u))
                    hist.pop()
            if (k + 1) % sample_every == 0:
                j = (k + 1) // sample_every
                if not np.all(np.isfinite(u.real)) or not np.all(np.isfinite(u.imag)):
                    raise InstabilityError(
                        f"non-finite field at t = {times[j]:g}", t_fail=float(times[j])
                    )
                fields[j] = u
                conserved[j] = norm_of(u)

    c0 = conserved[0]
    scale = abs(c0) if abs(c0) > 1e-300 else 1.0
    drift = float(np.max(np.abs(conserved - c0))) / scale
    return PdeTrajectory(
        times=times,
        fields=fields,
        conserved=conserved,
        conserved_name=conserved_name,
        norm_drift_warning=bool(drift > norm_drift_tol),
    )
