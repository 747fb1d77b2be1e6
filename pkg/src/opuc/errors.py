"""Exception hierarchy shared by every module of the package."""


class OpucError(Exception):
    """Base class for all package errors."""


class InvalidDegreeError(OpucError, ValueError):
    pass


class ConvergenceError(OpucError, ArithmeticError):
    """Root iteration did not meet its residual target.

    ``best`` holds the last iterate and ``residuals`` the scaled residual of
    each entry, so callers can still inspect a near miss.
    """

    def __init__(self, message, best=None, residuals=None):
        super().__init__(message)
        self.best = best
        self.residuals = residuals


class InvalidMeasureError(OpucError, ValueError):
    pass


class DegreeRangeError(OpucError, ValueError):
    """A polynomial exceeds the range covered by a moment table."""


class NoCompanionError(OpucError, ValueError):
    pass


class ConditioningError(OpucError, ArithmeticError):
    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


class NotApplicableError(OpucError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class InconsistentInputsError(OpucError, ValueError):
    pass


class DataInconsistencyError(OpucError, ArithmeticError):
    pass


class PreconditionError(OpucError, ValueError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DomainError(OpucError, ValueError):
    pass


class DegenerateDataError(OpucError, ArithmeticError):
    pass


class MissingCompanionError(OpucError, ValueError):
    """An operation needs the companion measure but none was attached."""
