"""Exception types raised across the package."""


class ModelError(ValueError):
    """Invalid model parameters.  ``field`` names the offending input."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class NotAnEigenvalueError(ValueError):
    pass


class DegenerateEigenvectorError(ArithmeticError):
    """All sub-determinants vanished; use :func:`null_space` instead."""


class DegenerateSpectrumError(ArithmeticError):
    def __init__(self, message, collisions=()):
        super().__init__(message)
        self.collisions = tuple(collisions)


class ConvergenceError(ArithmeticError):
    pass


class NonUniqueSteadyStateError(ArithmeticError):
    pass
