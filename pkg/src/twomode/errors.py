"""Exception types shared across the simulation modules."""

from __future__ import annotations


class DegenerateParametersError(ValueError):
    """Raised when the frequency gap vanishes (omega1 == omega2 and lam == 0)
    and the closed-form evolution is undefined."""


class ParameterCollapseError(RuntimeError):
    """Raised when a rule update would drive an inertia parameter to a
    non-positive value.  ``partial`` carries the trajectory accumulated up to
    the failing update, when available."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IntegrationUnstableError(RuntimeError):
    """Raised when an integrated operator entry exceeds the stability bound.
    ``time`` is the last recorded sample time, ``partial`` the trajectory up
    to that point."""

    def __init__(self, message: str, time: float | None = None, partial=None):
        super().__init__(message)
        self.time = time
        self.partial = partial


class FitNonConvergenceError(RuntimeError):
    """Raised when the damped Gauss-Newton loop exhausts its iteration budget.
    ``last_params`` holds the final (a, b, c) iterate."""

    def __init__(self, message: str, last_params=None, iterations: int | None = None):
        super().__init__(message)
        self.last_params = last_params
        self.iterations = iterations


class NoRulePredictionError(ValueError):
    """Raised when an equilibrium prediction is requested with no rule active
    (alpha1 == alpha2 == 0)."""


class UndefinedGapError(ValueError):
    """Raised when the reduced gap is requested with lam == 0."""
