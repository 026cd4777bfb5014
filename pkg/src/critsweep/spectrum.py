"""Frozen two-point power spectra and power-law index estimation.

Spectra are read off the final mode states at t_f: p_phi = |phi|^2,
p_pi = |pi|^2, p_grad = k^2 |phi|^2.  Indices are ordinary least squares
slopes of ln p against ln k over the window of modes that are frozen at
measurement time and were adiabatic at the start of the sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .analytic import tau_of_t
from .errors import EmptyFitWindowError, ScenarioError
from .model import SweepScenario, predicted_indices

DEFAULT_EPS_FROZEN = 0.1
DEFAULT_EPS_ADIAB = 10.0
MIN_FIT_POINTS = 8


class PowerLawFit(NamedTuple):
    index: float
    stderr: float


class UncertaintyRecord(NamedTuple):
    k: float
    dq_dp: float
    rs_invariant: float


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    """Per-mode frozen powers plus fitted and predicted indices."""

    k_values: np.ndarray
    p_phi: np.ndarray
    p_pi: np.ndarray
    p_grad: np.ndarray
    predicted_idx_phi: float
    predicted_idx_pi: float
    predicted_idx_grad: float
    fit_window: tuple[float, float] | None = None
    fitted_idx_phi: PowerLawFit | None = None
    fitted_idx_pi: PowerLawFit | None = None
    fitted_idx_grad: PowerLawFit | None = None

    def in_window(self) -> np.ndarray:
        """Boolean mask of modes strictly inside the fit window."""
        if self.fit_window is None:
            return np.zeros(self.k_values.shape, dtype=bool)
        lo, hi = self.fit_window
        return (self.k_values > lo) & (self.k_values < hi)


def assemble(trajectories, s: SweepScenario) -> SpectrumReport:
    """Build the spectrum report (without fits) from final mode states.

    Trajectories must share the scenario end time; input order is irrelevant
    (the report is sorted by wavenumber).
    """
    if not trajectories:
        raise ScenarioError("no trajectories to assemble")
    for traj in trajectories:
        t_end = float(traj.times[-1])
        if not math.isclose(t_end, s.t_f, rel_tol=1e-12, abs_tol=0.0):
            raise ScenarioError(
                f"trajectory for k={traj.k:.6g} ends at t={t_end!r}, "
                f"expected t_f={s.t_f!r}")
    ordered = sorted(trajectories, key=lambda traj: traj.k)
    k = np.array([traj.k for traj in ordered])
    phi_end = np.array([traj.phi[-1] for traj in ordered])
    pi_end = np.array([traj.pi[-1] for traj in ordered])
    p_phi = np.abs(phi_end) ** 2
    p_pi = np.abs(pi_end) ** 2
    p_grad = k ** 2 * p_phi
    idx_phi, idx_pi, idx_grad = predicted_indices(s.a, s.b)
    return SpectrumReport(
        k_values=k, p_phi=p_phi, p_pi=p_pi, p_grad=p_grad,
        predicted_idx_phi=idx_phi, predicted_idx_pi=idx_pi,
        predicted_idx_grad=idx_grad,
    )


def fit_mask(s: SweepScenario, eps_frozen=DEFAULT_EPS_FROZEN,
             eps_adiab=DEFAULT_EPS_ADIAB):
    """Wavenumber window (k_lo, k_hi) of modes usable for index fitting.

    A mode qualifies when it is frozen at measurement time,
    k |tau(t_f)| < eps_frozen, and was adiabatic at the start,
    k |tau(t_in)| > eps_adiab.
    """
    if not (0.0 < eps_frozen < 1.0 < eps_adiab):
        raise ScenarioError(
            f"need 0 < eps_frozen < 1 < eps_adiab, got {eps_frozen!r}, {eps_adiab!r}")
    tau_in = abs(tau_of_t(s, s.t_in).value)
    tau_f = abs(tau_of_t(s, s.t_f).value)
    k_lo = eps_adiab / tau_in
    k_hi = eps_frozen / tau_f
    if not k_lo < k_hi:
        raise EmptyFitWindowError(
            "fit window is empty: adiabatic-start bound k > "
            f"{k_lo:.6g} (from k|tau(t_in)| > {eps_adiab:g}) conflicts with "
            f"frozen-at-measurement bound k < {k_hi:.6g} (from k|tau(t_f)| < "
            f"{eps_frozen:g}); move t_f closer to the critical point or start "
            "the sweep earlier")
    return k_lo, k_hi


def fit_power_law(k, p, window) -> PowerLawFit:
    """Least-squares power-law index of p(k) over the window (log-log OLS)."""
    k = np.asarray(k, dtype=float)
    p = np.asarray(p, dtype=float)
    lo, hi = window
    sel = (k > lo) & (k < hi)
    n = int(np.count_nonzero(sel))
    if n < MIN_FIT_POINTS:
        raise EmptyFitWindowError(
            f"only {n} grid modes fall inside the fit window ({lo:.6g}, "
            f"{hi:.6g}); at least {MIN_FIT_POINTS} are required")
    pw = p[sel]
    if np.any(pw <= 0.0):
        raise ValueError("power values must be positive for a log-log fit")
    x = np.log(k[sel])
    y = np.log(pw)
    xm = x - x.mean()
    sxx = float(xm @ xm)
    if sxx == 0.0:
        raise EmptyFitWindowError("degenerate fit window: no spread in k")
    slope = float(xm @ (y - y.mean())) / sxx
    resid = (y - y.mean()) - slope * xm
    dof = n - 2
    sigma2 = float(resid @ resid) / dof if dof > 0 else 0.0
    return PowerLawFit(index=slope, stderr=math.sqrt(sigma2 / sxx))


def fit_spectrum(report: SpectrumReport, s: SweepScenario,
                 eps_frozen=DEFAULT_EPS_FROZEN,
                 eps_adiab=DEFAULT_EPS_ADIAB) -> SpectrumReport:
    """Return a copy of the report with the fit window and all three fitted
    indices filled in."""
    window = fit_mask(s, eps_frozen, eps_adiab)
    return replace(
        report,
        fit_window=window,
        fitted_idx_phi=fit_power_law(report.k_values, report.p_phi, window),
        fitted_idx_pi=fit_power_law(report.k_values, report.p_pi, window),
        fitted_idx_grad=fit_power_law(report.k_values, report.p_grad, window),
    )


def uncertainty_products(trajectories) -> list[UncertaintyRecord]:
    """Final-state uncertainty product and Gaussian purity invariant per mode.

    dq_dp = |phi| |pi| >= 1/2 and rs_invariant = |phi|^2 |pi|^2
    - Re(phi conj(pi))^2, which equals 1/4 for any canonically normalized
    pure Gaussian state (squeezing moves dq_dp, not the invariant).
    """
    out = []
    for traj in sorted(trajectories, key=lambda traj: traj.k):
        phi = complex(traj.phi[-1])
        pi = complex(traj.pi[-1])
        cross = phi * pi.conjugate()
        out.append(UncertaintyRecord(
            k=traj.k,
            dq_dp=abs(phi) * abs(pi),
            rs_invariant=abs(phi) ** 2 * abs(pi) ** 2 - cross.real ** 2,
        ))
    return out
