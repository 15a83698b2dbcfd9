"""Exception types shared across the package.

Two families: validation errors (bad inputs, regime violations) and
numerical errors (a computation that ran but could not certify its
result). The CLI maps the first family to exit code 1 and the second
to exit code 2.
"""


class ValidationError(ValueError):
    """Invalid input value, geometry, or configuration."""


class GeometryError(ValidationError):
    """Body geometry outside the regime a formula is valid for."""


class RegimeError(ValidationError):
    """Physical-regime precondition violated (e.g. hbar*omega >= kT)."""


class UnknownAxisError(ValidationError):
    """Sweep axis name not recognized."""


class NumericalError(RuntimeError):
    """A numerical routine failed to certify its result."""


class QuadratureError(NumericalError):
    """Adaptive quadrature did not converge to the requested tolerance."""


class DerivativeError(NumericalError):
    """Finite-difference step underflow or non-finite samples."""


class GridError(NumericalError):
    """Time grid too coarse for the requested discretization accuracy."""


class NoSwapError(NumericalError):
    """Phonon trace is flat; no swap time exists."""
