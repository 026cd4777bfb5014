"""Brute-force spatial-lattice oracle for the mode dynamics.

Evolves the discretized 1+1 dimensional field equation

    d Phi_j / dt = alpha(t) Pi_j,
    d Pi_j / dt  = beta(t) (Phi_{j+1} - 2 Phi_j + Phi_{j-1}) / dx^2

on a periodic box with kick-drift-kick leapfrog, time-centered coefficient
sampling, and a CFL-bounded step.  A plane wave of lattice wavenumber k_n
evolves exactly like a single mode at the effective wavenumber
k_eff = (2/dx) sin(k_n dx / 2), which is what the cross-checks compare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import LatticeError, ScenarioError
from .model import SweepScenario


@dataclass(frozen=True)
class LatticeConfig:
    """Periodic lattice geometry and step-size cap."""

    n_sites: int
    length: float
    dt_max: float

    def __post_init__(self):
        n = self.n_sites
        if n < 64 or (n & (n - 1)) != 0:
            raise ScenarioError(f"n_sites must be a power of two >= 64, got {n!r}")
        if not (self.length > 0.0 and math.isfinite(self.length)):
            raise ScenarioError(f"length must be finite and > 0, got {self.length!r}")
        if not (self.dt_max > 0.0 and math.isfinite(self.dt_max)):
            raise ScenarioError(f"dt_max must be finite and > 0, got {self.dt_max!r}")

    @property
    def spacing(self) -> float:
        return self.length / self.n_sites

    def wavenumber(self, n: int) -> float:
        """Comoving wavenumber k_n = 2 pi n / length of lattice harmonic n."""
        self._check_harmonic(n)
        return 2.0 * math.pi * n / self.length

    def _check_harmonic(self, n):
        if not (1 <= n <= self.n_sites // 2):
            raise ScenarioError(
                f"harmonic must lie in [1, {self.n_sites // 2}], got {n!r}")


@dataclass(frozen=True, eq=False)
class LatticeResult:
    phi: np.ndarray
    pi: np.ndarray
    steps: int


def lattice_dispersion(cfg: LatticeConfig, n: int) -> float:
    """Effective wavenumber of harmonic n under the nearest-neighbor
    Laplacian: k_eff = (2/dx) sin(k_n dx/2) -> k_n as k_n dx -> 0."""
    cfg._check_harmonic(n)
    dx = cfg.spacing
    return (2.0 / dx) * math.sin(0.5 * cfg.wavenumber(n) * dx)


def plane_wave(cfg: LatticeConfig, n: int, phi0: complex, pi0: complex):
    """Initial (phi, pi) arrays for a single plane wave of harmonic n with
    uniform complex amplitudes phi0, pi0."""
    x = np.arange(cfg.n_sites) * cfg.spacing
    wave = np.exp(1j * cfg.wavenumber(n) * x)
    return phi0 * wave, pi0 * wave


def evolve_lattice(cfg: LatticeConfig, s: SweepScenario, phi0, pi0,
                   max_steps=10_000_000) -> LatticeResult:
    """Leapfrog the lattice field over the scenario interval [t_in, t_f]."""
    phi0 = np.asarray(phi0, dtype=np.complex128)
    pi0 = np.asarray(pi0, dtype=np.complex128)
    if phi0.shape != (cfg.n_sites,) or pi0.shape != (cfg.n_sites,):
        raise ScenarioError(
            f"initial fields must have shape ({cfg.n_sites},), got "
            f"{phi0.shape} and {pi0.shape}")
    phi, pi, steps, status = kernels.evolve_lattice_powerlaw(
        phi0, pi0, s.alpha0, s.a, s.beta0, s.b, s.t_in, s.t_f,
        cfg.spacing, cfg.dt_max, max_steps)
    if status == kernels.LATTICE_NONFINITE:
        raise LatticeError("lattice evolution produced non-finite field values")
    if status == kernels.LATTICE_BAD_STEP:
        raise LatticeError("CFL-bounded step degenerated to zero")
    if status == kernels.LATTICE_MAXSTEPS:
        raise LatticeError(f"step budget of {max_steps} exhausted")
    return LatticeResult(phi=phi, pi=pi, steps=steps)


def lattice_energy(cfg: LatticeConfig, s: SweepScenario, phi, pi, t) -> float:
    """Discrete field energy sum( alpha |pi|^2 + beta |dphi/dx|^2 ) dx / 2."""
    phi = np.asarray(phi, dtype=np.complex128)
    pi = np.asarray(pi, dtype=np.complex128)
    dx = cfg.spacing
    grad = (np.roll(phi, -1) - phi) / dx
    al = s.alpha(t)
    be = s.beta(t)
    dens = al * np.abs(pi) ** 2 + be * np.abs(grad) ** 2
    return float(dens.sum() * dx / 2.0)
