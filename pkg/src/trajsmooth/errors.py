"""Exception hierarchy."""


class TrajsmoothError(Exception):
    """Base class for all errors raised by this package."""


class InputError(TrajsmoothError, ValueError):
    """Malformed or unusable input data."""


class NumericalError(TrajsmoothError, ArithmeticError):
    """A numerical failure during evolution.

    ``step`` is filled in by the evolution loop when the failure happens
    inside a time step.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.message = message
        self.step = step

    def __str__(self):
        if self.step is None:
            return self.message
        return f"step {self.step}: {self.message}"


class DegenerateCurveError(NumericalError):
    """An element length collapsed below the degeneracy floor."""


class SolverError(NumericalError):
    """Tridiagonal elimination hit a vanishing pivot."""


class RemapError(NumericalError):
    """Segment endpoint remapping could not be completed."""
