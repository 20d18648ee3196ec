class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedError(TypeError):
    """The operation needs something the distribution does not provide."""


class NumericalError(ArithmeticError):
    """A quadrature or series failed to reach the requested accuracy."""

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval
