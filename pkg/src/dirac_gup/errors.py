"""Exception types shared across the package."""


class ParameterDomainError(ValueError):
    """A physical parameter lies outside the region where a quantity is defined.

    ``field`` names the offending parameter when there is a single culprit.
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NoFiniteBoundError(ParameterDomainError):
    """Raised when a momentum bound is requested for the nondeformed algebra."""


class EmptySpectrumError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    """Numerical routine failed to converge; ``diagnostics`` carries residual data."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
