"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of a special function."""


class ScenarioError(ValueError):
    """A sweep scenario or configuration violates its invariants."""


class SingularParametersError(ScenarioError):
    """Exponent combination with 2 + a + b <= 0: the time reparametrization
    does not map the approach to the critical point onto a finite interval."""


class NumericalFailureError(RuntimeError):
    """An integration failed: step underflow, non-finite values, or
    conservation drift beyond the accepted bound."""


class EmptyFitWindowError(ValueError):
    """No usable wavenumber band is simultaneously frozen at measurement time
    and adiabatic at the start of the sweep."""


class LatticeError(RuntimeError):
    """Lattice evolution failed (degenerate CFL step or non-finite fields)."""
