"""Closed-form mode solutions in the reparametrized time coordinate.

With power-law coefficients the wave equation becomes, in the coordinate
tau = -(sqrt(alpha0 beta0)/s) |t|^s with s = (2 + a + b)/2,

    d2 Phi / d tau^2 - ((2 nu - 1)/tau) d Phi / d tau + k^2 Phi = 0,

with nu = (1 + a)/(2 + a + b), solved by |tau|^nu H^(1)_nu(k |tau|).  The
derivation (including why the exponent s above is the one consistent with
that value of nu) lives in docs/derivation.md.  This module supplies the
reference solutions the numerical integrator is validated against, and the
frozen plateau amplitude behind the predicted spectra.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .dynamics import ModeState
from .errors import ScenarioError
from .model import SweepScenario, predicted_nu
from .specfun import hankel


@dataclass(frozen=True)
class TauCoordinate:
    """Reparametrized time value: tau = -scale * |t|^s_exp < 0, increasing
    toward zero as the sweep approaches the critical point."""

    s_exp: float
    scale: float
    value: float


def tau_of_t(s: SweepScenario, t) -> TauCoordinate:
    """Map laboratory time to the Bessel-form coordinate.

    d tau / dt = sqrt(alpha beta) = c(t), so |tau(t)| is exactly the comoving
    horizon distance remaining between t and the critical point.
    """
    if not (s.t_in <= t < 0.0):
        raise ScenarioError(f"t={t!r} outside [t_in, 0) = [{s.t_in!r}, 0)")
    sx = s.tau_exponent
    scale = math.sqrt(s.alpha0 * s.beta0) / sx
    return TauCoordinate(s_exp=sx, scale=scale, value=-scale * abs(t) ** sx)


def mode_normalization(s: SweepScenario, k) -> complex:
    """Normalization constant of the positive-frequency solution.

    The modulus is fixed by matching the large-k|tau| Hankel asymptotics to
    the adiabatic amplitude sqrt(alpha/(2 omega)) (evaluated at t_in, where
    k|tau| is largest; the combination is time-independent for power laws).
    The phase cancels the Hankel asymptotic phase offset so the mode behaves
    as amplitude * e^{+i k |tau|}, the positive-frequency convention.  The
    unit Wronskian then follows and is verified in the test suite rather
    than imposed.
    """
    if k <= 0.0:
        raise ScenarioError(f"k must be > 0, got {k!r}")
    nu = predicted_nu(s.a, s.b)
    al = s.alpha(s.t_in)
    omega = k * math.sqrt(al * s.beta(s.t_in))
    u_in = abs(tau_of_t(s, s.t_in).value)
    mag = math.sqrt(math.pi * k * al / (4.0 * omega)) * u_in ** (0.5 - nu)
    phase = (0.5 * nu + 0.25) * math.pi
    return complex(mag * math.cos(phase), mag * math.sin(phase))


def analytic_mode(s: SweepScenario, k, t) -> ModeState:
    """Positive-frequency mode state at time t from the closed-form solution.

    phi = N |tau|^nu H^(1)_nu(k|tau|) and pi = phi_dot / alpha, using
    d/du [u^nu H_nu(k u)] = k u^nu H_{nu-1}(k u); negative orders nu - 1 are
    folded back with H^(1)_{-m} = e^{i m pi} H^(1)_m.
    """
    nu = predicted_nu(s.a, s.b)
    if nu <= 0.0:
        raise ScenarioError(
            f"analytic solution requires nu > 0, got nu={nu!r}")
    tau = tau_of_t(s, t)  # validates t
    u = abs(tau.value)
    z = k * u
    norm = mode_normalization(s, k)

    phi = norm * u ** nu * hankel(1, nu, z)

    order = nu - 1.0
    if order >= 0.0:
        h_down = hankel(1, order, z)
    else:
        m = -order
        h_down = cmath.exp(1j * math.pi * m) * hankel(1, m, z)
    al = s.alpha(t)
    c = math.sqrt(al * s.beta(t))
    pi = -(c / al) * norm * k * u ** nu * h_down
    return ModeState(k=k, t=t, phi=phi, pi=pi)


def frozen_amplitude(s: SweepScenario, k):
    """Plateau modulus of the frozen mode, |N| (Gamma(nu)/pi) (2/k)^nu.

    This is the leading small-|tau| limit of |phi|; ratios between
    wavenumbers scale exactly as (k1/k2)^(-nu) because the normalization
    constant carries no k dependence.
    """
    nu = predicted_nu(s.a, s.b)
    if nu <= 0.0:
        raise ScenarioError(f"frozen plateau requires nu > 0, got nu={nu!r}")
    if k <= 0.0:
        raise ScenarioError(f"k must be > 0, got {k!r}")
    return abs(mode_normalization(s, k)) * (math.gamma(nu) / math.pi) * (2.0 / k) ** nu
