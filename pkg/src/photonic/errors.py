"""Exception types raised across the package."""


class PhotonicError(Exception):
    """Base class for all package errors."""


class InvalidSuperpositionError(PhotonicError, ValueError):
    """A superposition (or its text representation) violates an invariant.

    ``line`` carries the 1-based line number when the error comes from a file.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class StepRejectedError(PhotonicError, ValueError):
    """An apportionment impulse would drive a component magnitude to zero."""


class MasslessError(PhotonicError, ValueError):
    """Operation needs a rest frame but the superposition has zero rest mass."""


class CorruptStateError(PhotonicError, ArithmeticError):
    """Numerical state is inconsistent, e.g. total energy below |P|."""


class RankDeficientError(PhotonicError, ValueError):
    """Sky samples do not constrain a monopole + dipole model."""


class ConvergenceError(PhotonicError, RuntimeError):
    """An iterative procedure ran out of budget.

    ``diagnostics`` holds whatever state was available when it gave up.
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics
