"""Per-mode canonical evolution from the adiabatic vacuum to the end of the
sweep, with conservation monitoring.

Each Fourier mode obeys the first-order canonical system

    d phi / dt = alpha(t) pi,      d pi / dt = -beta(t) k^2 phi,

whose flow conserves the Wronskian W = phi conj(pi) - conj(phi) pi.  The
canonical vacuum normalization fixes W = i (hbar = 1), i.e.
Im(phi conj(pi)) = 1/2.  The first-order formulation keeps that invariant
and the field/momentum duality directly testable.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import NumericalFailureError, ScenarioError
from .model import SweepScenario, sound_speed

# warn when the starting state is farther from adiabatic than this
ADIABATICITY_WARN_THRESHOLD = 0.05

# conservation gate: trajectories whose scaled Wronskian drift exceeds
# DRIFT_GATE_FACTOR * tol are rejected as numerical failures
DRIFT_GATE_FACTOR = 100.0

DEFAULT_SAMPLES = 129

WORKERS_ENV_VAR = "CRITSWEEP_MAX_WORKERS"

_MODE_STATUS_MESSAGES = {
    kernels.MODE_STEP_UNDERFLOW: "step size underflow",
    kernels.MODE_NONFINITE: "non-finite state encountered",
    kernels.MODE_MAXSTEPS: "step budget exhausted",
}


class AdiabaticityWarning(UserWarning):
    """The requested initial time is not deep enough in the adiabatic regime
    for the leading-order vacuum prescription to be accurate."""


@dataclass(frozen=True)
class ModeState:
    """Complex mode amplitude and conjugate momentum of one wavenumber at one
    time, in canonical units (hbar = 1, pi = phi_dot / alpha)."""

    k: float
    t: float
    phi: complex
    pi: complex

    def wronskian(self) -> complex:
        return self.phi * self.pi.conjugate() - self.phi.conjugate() * self.pi


@dataclass(frozen=True, eq=False)
class ModeTrajectory:
    """Time-ordered states of one mode plus integrator diagnostics.

    max_wronskian_drift is the largest excursion of Im(phi conj(pi)) from its
    initial value over *every accepted internal step* (a superset of the
    sampled states), scaled so that canonically normalized trajectories
    report |Im(phi conj(pi)) - 1/2| directly.
    """

    k: float
    times: np.ndarray
    phi: np.ndarray
    pi: np.ndarray
    max_wronskian_drift: float
    steps_taken: int
    steps_rejected: int

    def __len__(self):
        return self.times.shape[0]

    @property
    def states(self) -> tuple[ModeState, ...]:
        return tuple(
            ModeState(k=self.k, t=float(t), phi=complex(f), pi=complex(g))
            for t, f, g in zip(self.times, self.phi, self.pi))

    @property
    def initial_state(self) -> ModeState:
        return ModeState(k=self.k, t=float(self.times[0]),
                         phi=complex(self.phi[0]), pi=complex(self.pi[0]))

    @property
    def final_state(self) -> ModeState:
        return ModeState(k=self.k, t=float(self.times[-1]),
                         phi=complex(self.phi[-1]), pi=complex(self.pi[-1]))


def adiabaticity_ratio(s: SweepScenario, k, t):
    """Adiabaticity parameter |omega_dot| / omega^2 = |a + b| / (2 |t| omega).

    Vanishes identically for a + b = 0 and diverges as t -> 0 otherwise;
    small values mean the mode still oscillates many times per coefficient
    e-folding (equivalently k |tau| >> 1).
    """
    if k <= 0.0:
        raise ScenarioError(f"k must be > 0, got {k!r}")
    omega = k * sound_speed(s, t)
    return abs(s.a + s.b) / (2.0 * abs(t) * omega)


def adiabatic_init(s: SweepScenario, k) -> ModeState:
    """Leading-order adiabatic vacuum state at t_in.

    phi = sqrt(alpha/(2 omega)), pi = -i sqrt(omega/(2 alpha)) with
    omega = k sqrt(alpha beta), all evaluated at t_in; the accumulated phase
    convention is zero at t_in.  The Wronskian is exactly i.  A warning is
    attached when the adiabaticity ratio at t_in exceeds the threshold.
    """
    if k <= 0.0:
        raise ScenarioError(f"k must be > 0, got {k!r}")
    ratio = adiabaticity_ratio(s, k, s.t_in)
    if ratio >= ADIABATICITY_WARN_THRESHOLD:
        warnings.warn(
            f"mode k={k:.6g} has adiabaticity ratio {ratio:.3g} >= "
            f"{ADIABATICITY_WARN_THRESHOLD} at t_in; initial state may not be "
            "vacuum to working accuracy", AdiabaticityWarning, stacklevel=2)
    al = s.alpha(s.t_in)
    omega = k * sound_speed(s, s.t_in)
    return ModeState(
        k=k, t=s.t_in,
        phi=complex(math.sqrt(al / (2.0 * omega)), 0.0),
        pi=complex(0.0, -math.sqrt(omega / (2.0 * al))),
    )


def sample_times(s: SweepScenario, n_samples=DEFAULT_SAMPLES) -> np.ndarray:
    """Geometric output grid in |t| from t_in to t_f (endpoints exact)."""
    if n_samples < 2:
        raise ScenarioError("n_samples must be >= 2")
    ratio = math.log(abs(s.t_f) / abs(s.t_in))
    times = -np.exp(np.log(abs(s.t_in))
                    + ratio * np.arange(n_samples) / (n_samples - 1))
    times[0] = s.t_in
    times[-1] = s.t_f
    return times


def evolve_mode(s: SweepScenario, init: ModeState, tol,
                n_samples=DEFAULT_SAMPLES) -> ModeTrajectory:
    """Integrate one mode from t_in to t_f with local error control.

    The integrator takes exponential (Magnus) steps, so every step map has
    unit determinant and the Wronskian is conserved structurally; the drift
    gate below is a genuine failure detector, not a tuning knob.
    """
    if not (1e-12 <= tol <= 1e-4):
        raise ScenarioError(f"tol must lie in [1e-12, 1e-4], got {tol!r}")
    if init.k <= 0.0:
        raise ScenarioError(f"init.k must be > 0, got {init.k!r}")
    if not math.isclose(init.t, s.t_in, rel_tol=1e-12, abs_tol=0.0):
        raise ScenarioError(
            f"initial state sits at t={init.t!r}, scenario starts at {s.t_in!r}")

    times = sample_times(s, n_samples)
    phis, pis, drift_abs, nacc, nrej, status = kernels.evolve_mode_powerlaw(
        init.k, s.alpha0, s.a, s.beta0, s.b, times,
        complex(init.phi), complex(init.pi), tol)
    if status != kernels.MODE_OK:
        msg = _MODE_STATUS_MESSAGES.get(status, f"status {status}")
        raise NumericalFailureError(
            f"mode k={init.k:.6g}: integration failed ({msg})")

    im0 = init.phi.imag * init.pi.real - init.phi.real * init.pi.imag
    scale = 0.5 / abs(im0) if im0 != 0.0 else 1.0
    drift = drift_abs * scale
    if drift > DRIFT_GATE_FACTOR * tol:
        raise NumericalFailureError(
            f"mode k={init.k:.6g}: Wronskian drift {drift:.3e} exceeds "
            f"{DRIFT_GATE_FACTOR:g} * tol = {DRIFT_GATE_FACTOR * tol:.3e}")
    return ModeTrajectory(
        k=init.k, times=times, phi=phis, pi=pis,
        max_wronskian_drift=drift, steps_taken=nacc, steps_rejected=nrej,
    )


def _max_workers():
    raw = os.environ.get(WORKERS_ENV_VAR, "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def evolve_all(s: SweepScenario, tol, n_samples=DEFAULT_SAMPLES) -> list[ModeTrajectory]:
    """Evolve every mode of the scenario grid from its adiabatic vacuum.

    Modes are independent; results are identical to separate evolve_mode
    calls and deterministic regardless of scheduling.  The environment
    variable CRITSWEEP_MAX_WORKERS caps thread parallelism (default 1).
    """
    if not s.k_grid:
        raise ScenarioError("scenario has an empty k_grid")

    def one(k):
        return evolve_mode(s, adiabatic_init(s, k), tol, n_samples)

    workers = min(_max_workers(), len(s.k_grid))
    failures = []
    results: list[ModeTrajectory | None] = [None] * len(s.k_grid)
    if workers == 1:
        for i, k in enumerate(s.k_grid):
            try:
                results[i] = one(k)
            except NumericalFailureError as exc:
                failures.append(str(exc))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(one, k) for k in s.k_grid]
            for i, fut in enumerate(futures):
                try:
                    results[i] = fut.result()
                except NumericalFailureError as exc:
                    failures.append(str(exc))
    if failures:
        raise NumericalFailureError(
            f"{len(failures)} of {len(s.k_grid)} modes failed:\n  "
            + "\n  ".join(failures))
    return results  # type: ignore[return-value]
