"""Spectral heat-kernel laboratory.

Reduction constants for momentum integrals, certified eigenvalue streams for
rectangular boxes, heat-trace regularization with finite-part extraction, a
stochastic-source estimator for regulated traces, box self-interaction
integrals with concavity and positivity checks, and the parallel-plate
pipeline that ties them together.
"""

from .errors import (
    CaslabError,
    ConfigError,
    ConstraintError,
    ConvergenceError,
    CutoffError,
    EmptySpectrumError,
    FitConditionError,
    FitInstabilityError,
    ParameterError,
    PoleError,
    QuadratureError,
    ResourceError,
)

__version__ = "0.1.0"

__all__ = [
    "CaslabError",
    "ConfigError",
    "ConstraintError",
    "ConvergenceError",
    "CutoffError",
    "EmptySpectrumError",
    "FitConditionError",
    "FitInstabilityError",
    "ParameterError",
    "PoleError",
    "QuadratureError",
    "ResourceError",
    "__version__",
]
