"""Exception hierarchy shared across the package.

Every error raised by library code derives from CaslabError so callers can
catch one base type at module boundaries.  Subclasses carry enough state to
report what went wrong without re-running the computation.
"""

from __future__ import annotations


class CaslabError(Exception):
    """Base class for all package errors."""


class ParameterError(CaslabError, ValueError):
    """An argument is outside the supported domain."""


class PoleError(ParameterError):
    """Evaluation requested exactly at a pole of the function."""


class ConvergenceError(CaslabError):
    """An iterative computation failed to reach its tolerance."""


class QuadratureError(ConvergenceError):
    """A quadrature routine could not certify the requested accuracy."""


class ConstraintError(ParameterError):
    """Geometric side conditions are violated (e.g. a fixed-product family)."""


class CutoffError(CaslabError):
    """A spectral truncation bound exceeds the accuracy target.

    Attributes
    ----------
    tail_bound : float
        Certified bound on the discarded part.
    target : float
        Accuracy budget that was exceeded.
    """

    def __init__(self, message: str, tail_bound: float, target: float):
        super().__init__(message)
        self.tail_bound = tail_bound
        self.target = target


class FitConditionError(CaslabError):
    """Least-squares design matrix is too ill conditioned to trust."""

    def __init__(self, message: str, condition_number: float):
        super().__init__(message)
        self.condition_number = condition_number


class FitInstabilityError(CaslabError):
    """Extracted coefficient moves too much between nested fit windows."""

    def __init__(self, message: str, drift: float, tolerance: float):
        super().__init__(message)
        self.drift = drift
        self.tolerance = tolerance


class ResourceError(CaslabError):
    """A computation would exceed the configured resource budget."""


class EmptySpectrumError(CaslabError):
    """A spectral cutoff admits no modes at all."""


class ConfigError(CaslabError):
    """Invalid run configuration supplied to the command-line harness."""
