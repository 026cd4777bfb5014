"""Sweep scenarios, transition taxonomy, predicted spectral exponents, and
horizon geometry.

A sweep drives the quadratic mode Hamiltonian (1/2)(alpha Pi^2 + beta |grad
Phi|^2) toward the critical point at t = 0 with power-law coefficient
histories alpha(t) = alpha0 |t|^a and beta(t) = beta0 |t|^b on a strictly
negative time interval.  Everything downstream (mode evolution, closed-form
solutions, spectra) reads the physics from a single SweepScenario value.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .errors import ScenarioError, SingularParametersError

# classification tolerance: exponents within this of zero count as zero
EXPONENT_ZERO_TOL = 1e-12

# documented defaults shared by presets and the command-line driver
DEFAULT_T_IN = -10.0
DEFAULT_T_F = -1e-3
DEFAULT_K_MIN = 0.05
DEFAULT_K_MAX = 50.0
DEFAULT_POINTS_PER_DECADE = 32


class SpectrumExponentWarning(UserWarning):
    """A predicted exponent is non-positive: the power-law index formula is
    still reported but the freeze-out amplification picture behind it fails."""


class TransitionCase(Enum):
    """Which coefficient(s) vanish at the critical point."""

    A = "A"        # alpha -> 0, beta finite: expanding effective geometry
    B = "B"        # beta -> 0, alpha finite: contracting effective geometry
    C = "C"        # both vanish
    NONE = "none"  # no case applies (trivial sweep or out-of-taxonomy exponents)


@dataclass(frozen=True)
class SweepScenario:
    """Power-law coefficient histories, sweep interval, and wavenumber grid.

    The critical point sits at t = 0; the sweep runs over [t_in, t_f] with
    t_in < t_f < 0, approaching the critical point from below.  Power laws
    are taken in |t| so non-integer exponents stay well defined.
    """

    alpha0: float
    a: float
    beta0: float
    b: float
    t_in: float = DEFAULT_T_IN
    t_f: float = DEFAULT_T_F
    k_grid: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "k_grid", tuple(float(k) for k in self.k_grid))
        if not (self.alpha0 > 0.0 and math.isfinite(self.alpha0)):
            raise ScenarioError(f"alpha0 must be finite and > 0, got {self.alpha0!r}")
        if not (self.beta0 > 0.0 and math.isfinite(self.beta0)):
            raise ScenarioError(f"beta0 must be finite and > 0, got {self.beta0!r}")
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ScenarioError("exponents a, b must be finite")
        if not (self.t_in < self.t_f < 0.0):
            raise ScenarioError(
                "sweep must end strictly before the critical point: "
                f"need t_in < t_f < 0, got t_in={self.t_in!r}, t_f={self.t_f!r}")
        if 2.0 + self.a + self.b <= 0.0:
            raise SingularParametersError(
                f"2 + a + b must be > 0, got a={self.a!r}, b={self.b!r}")
        for k_prev, k_next in zip(self.k_grid, self.k_grid[1:]):
            if not k_next > k_prev:
                raise ScenarioError("k_grid must be strictly increasing")
        if self.k_grid and not (self.k_grid[0] > 0.0):
            raise ScenarioError("k_grid entries must be positive")

    def alpha(self, t):
        return self.alpha0 * abs(t) ** self.a

    def beta(self, t):
        return self.beta0 * abs(t) ** self.b

    @property
    def tau_exponent(self) -> float:
        """Exponent s of the time reparametrization, s = (2 + a + b)/2 > 0."""
        return 0.5 * (2.0 + self.a + self.b)


@dataclass(frozen=True)
class HorizonReport:
    """Comoving horizon distance and per-wavelength crossing times."""

    total_distance: float
    crossing_times: dict[float, float]
    converges_at_infinity: bool


def _is_zero(x):
    return abs(x) <= EXPONENT_ZERO_TOL


def classify_case(s: SweepScenario) -> TransitionCase:
    """Tag the transition by which coefficients vanish as t -> 0.

    A: a > 0 and b = 0; B: a = 0 and b > 0; C: a > 0 and b > 0.  Everything
    else (the trivial sweep a = b = 0, or exponents of mixed sign where a
    coefficient diverges) gets NONE: the taxonomy only covers vanishing
    coefficients.
    """
    a_zero, b_zero = _is_zero(s.a), _is_zero(s.b)
    if a_zero and b_zero:
        return TransitionCase.NONE
    if s.a > 0.0 and b_zero:
        return TransitionCase.A
    if a_zero and s.b > 0.0:
        return TransitionCase.B
    if s.a > 0.0 and s.b > 0.0:
        return TransitionCase.C
    return TransitionCase.NONE


def predicted_nu(a, b):
    """Freeze-out exponent nu = (1 + a)/(2 + a + b).

    The frozen field spectrum scales as k^(-2 nu).  Requires 2 + a + b > 0;
    a non-positive result is flagged with a warning because the index
    formula then no longer describes an amplified frozen spectrum.
    """
    denom = 2.0 + a + b
    if denom <= 0.0:
        raise SingularParametersError(f"2 + a + b must be > 0, got a={a!r}, b={b!r}")
    nu = (1.0 + a) / denom
    if nu <= 0.0:
        warnings.warn(
            f"predicted exponent nu = {nu:.6g} <= 0 for a={a!r}, b={b!r}; "
            "freeze-out scaling does not apply", SpectrumExponentWarning,
            stacklevel=2)
    return nu


def predicted_indices(a, b):
    """Predicted power-law indices of the frozen two-point spectra.

    Returns (idx_phi, idx_pi, idx_grad):
      field     idx_phi  = -2 nu(a, b)
      momentum  idx_pi   = 2 - 2 nu(b, a)   (dual exponent plus one factor k)
      gradient  idx_grad = 2 - 2 nu(a, b)

    The momentum formula presumes the dual exponent nu(b, a) is positive;
    when it is not (e.g. b <= -1) the warning from predicted_nu fires and
    the measured momentum spectrum will not follow the reported index.
    """
    nu = predicted_nu(a, b)
    nu_dual = predicted_nu(b, a)
    return -2.0 * nu, 2.0 - 2.0 * nu_dual, 2.0 - 2.0 * nu


def sound_speed(s: SweepScenario, t):
    """Propagation speed c(t) = sqrt(alpha(t) beta(t)) within the sweep."""
    _check_time(s, t)
    return math.sqrt(s.alpha(t) * s.beta(t))


def effective_metric(s: SweepScenario, t):
    """Effective line-element components (g_tt, g_rr) = (sqrt(alpha beta^3),
    sqrt(beta/alpha)) seen by the low-energy mode."""
    _check_time(s, t)
    al, be = s.alpha(t), s.beta(t)
    return math.sqrt(al * be ** 3), math.sqrt(be / al)


def _check_time(s, t):
    if not (s.t_in <= t <= s.t_f):
        raise ScenarioError(f"t={t!r} outside sweep interval [{s.t_in!r}, {s.t_f!r}]")


def horizon_distance(s: SweepScenario, t_start, t_end):
    """Comoving distance int_{t_start}^{t_end} c(t) dt, in closed form.

    For power-law coefficients the integral is
    (sqrt(alpha0 beta0)/s_exp) (|t_start|^s_exp - |t_end|^s_exp) with
    s_exp = (2 + a + b)/2; t_end = 0 is allowed (the integrand stays
    integrable because s_exp > 0).
    """
    if not (s.t_in <= t_start < t_end <= 0.0):
        raise ScenarioError(
            f"need t_in <= t_start < t_end <= 0, got [{t_start!r}, {t_end!r}]")
    sx = s.tau_exponent
    pref = math.sqrt(s.alpha0 * s.beta0) / sx
    return pref * (abs(t_start) ** sx - abs(t_end) ** sx)


def horizon_exists_at_infinite_time(a, b):
    """Whether the comoving distance stays finite as t -> +infinity for
    late-time power laws alpha ~ t^a, beta ~ t^b: requires (a + b)/2 < -1.
    The boundary case a + b = -2 diverges logarithmically and counts as no
    horizon."""
    return 0.5 * (a + b) < -1.0


def crossing_time(s: SweepScenario, wavelength):
    """Time t* at which the remaining horizon distance equals `wavelength`.

    Inverts the closed-form power-law integral.  Returns None when the mode
    is already outside the horizon at the start of the sweep or the crossing
    does not fall strictly inside (t_in, 0).
    """
    if not (wavelength > 0.0 and math.isfinite(wavelength)):
        raise ScenarioError(f"wavelength must be finite and > 0, got {wavelength!r}")
    sx = s.tau_exponent
    pref = math.sqrt(s.alpha0 * s.beta0) / sx
    t_star = -((wavelength / pref) ** (1.0 / sx))
    if s.t_in < t_star < 0.0:
        return t_star
    return None


def horizon_report(s: SweepScenario) -> HorizonReport:
    """Assemble the horizon summary for a scenario.

    Crossing times are computed for the physical wavelength 2 pi / k of each
    grid mode and reported only when they fall strictly inside the sweep
    interval (t_in, t_f).
    """
    total = horizon_distance(s, s.t_in, 0.0)
    crossings = {}
    for k in s.k_grid:
        lam = 2.0 * math.pi / k
        t_star = crossing_time(s, lam)
        if t_star is not None and s.t_in < t_star < s.t_f:
            crossings[lam] = t_star
    return HorizonReport(
        total_distance=total,
        crossing_times=crossings,
        converges_at_infinity=horizon_exists_at_infinite_time(s.a, s.b),
    )


def log_k_grid(k_min, k_max, points_per_decade=DEFAULT_POINTS_PER_DECADE):
    """Logarithmically spaced wavenumber grid with a fixed density per decade."""
    if not (0.0 < k_min < k_max):
        raise ScenarioError(f"need 0 < k_min < k_max, got {k_min!r}, {k_max!r}")
    if points_per_decade < 1:
        raise ScenarioError("points_per_decade must be >= 1")
    decades = math.log10(k_max / k_min)
    n = int(math.floor(decades * points_per_decade + 1e-9)) + 1
    return tuple(k_min * 10.0 ** (i / points_per_decade) for i in range(n))


# preset name -> (a, b); amplitudes are unity and the interval/grid defaults
# above apply unless overridden
PRESET_EXPONENTS = {
    "bec": (1.0, 0.0),          # interaction strength swept to zero: case A
    "em-medium": (0.0, 1.0),    # permeability-driven transition: case B
    "heisenberg": (1.0, 1.0),   # global coupling swept to zero: case C
    "desitter": (2.0, -2.0),    # scale-invariant sweep, a + 3b = -4
}


def preset(name, *, alpha0=1.0, beta0=1.0, t_in=DEFAULT_T_IN, t_f=DEFAULT_T_F,
           k_min=DEFAULT_K_MIN, k_max=DEFAULT_K_MAX,
           points_per_decade=DEFAULT_POINTS_PER_DECADE) -> SweepScenario:
    """Named sweep scenario with the documented default interval and grid."""
    try:
        a, b = PRESET_EXPONENTS[name]
    except KeyError:
        known = ", ".join(sorted(PRESET_EXPONENTS))
        raise ScenarioError(f"unknown preset {name!r} (known: {known})") from None
    return SweepScenario(
        alpha0=alpha0, a=a, beta0=beta0, b=b, t_in=t_in, t_f=t_f,
        k_grid=log_k_grid(k_min, k_max, points_per_decade),
    )
