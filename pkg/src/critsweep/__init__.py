"""critsweep: mode dynamics and frozen fluctuation spectra for finite-velocity
sweeps of a quadratic field Hamiltonian through its critical point.

The package integrates canonical mode equations with power-law coefficient
histories through horizon crossing and freeze-out, and checks the measured
power-law spectra against the closed-form predictions.
"""

from ._backend import BACKEND
from .analytic import TauCoordinate, analytic_mode, frozen_amplitude, tau_of_t
from .dynamics import (AdiabaticityWarning, ModeState, ModeTrajectory,
                       adiabatic_init, adiabaticity_ratio, evolve_all,
                       evolve_mode)
from .errors import (DomainError, EmptyFitWindowError, LatticeError,
                     NumericalFailureError, ScenarioError,
                     SingularParametersError)
from .lattice import (LatticeConfig, LatticeResult, evolve_lattice,
                      lattice_dispersion, lattice_energy, plane_wave)
from .model import (HorizonReport, SpectrumExponentWarning, SweepScenario,
                    TransitionCase, classify_case, crossing_time,
                    effective_metric, horizon_distance,
                    horizon_exists_at_infinite_time, horizon_report,
                    log_k_grid, predicted_indices, predicted_nu, preset,
                    sound_speed)
from .spectrum import (PowerLawFit, SpectrumReport, UncertaintyRecord,
                       assemble, fit_mask, fit_power_law, fit_spectrum,
                       uncertainty_products)
from .specfun import bessel_j, bessel_y, hankel

__version__ = "0.1.0"

__all__ = [
    "AdiabaticityWarning", "BACKEND", "DomainError", "EmptyFitWindowError",
    "HorizonReport", "LatticeConfig", "LatticeError", "LatticeResult",
    "ModeState", "ModeTrajectory", "NumericalFailureError", "PowerLawFit",
    "ScenarioError", "SingularParametersError", "SpectrumExponentWarning",
    "SpectrumReport", "SweepScenario", "TauCoordinate", "TransitionCase",
    "UncertaintyRecord", "adiabatic_init", "adiabaticity_ratio",
    "analytic_mode", "assemble", "bessel_j", "bessel_y", "classify_case",
    "crossing_time", "effective_metric", "evolve_all", "evolve_lattice",
    "evolve_mode", "fit_mask", "fit_power_law", "fit_spectrum",
    "frozen_amplitude", "hankel", "horizon_distance",
    "horizon_exists_at_infinite_time", "horizon_report", "lattice_dispersion",
    "lattice_energy", "log_k_grid", "plane_wave", "predicted_indices",
    "predicted_nu", "preset", "sound_speed", "tau_of_t",
    "uncertainty_products",
]
