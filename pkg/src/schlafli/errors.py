"""Exception hierarchy shared across the package."""


class SchlafliError(Exception):
    """Base class for all package errors."""


class DomainError(SchlafliError, ValueError):
    """An argument lies outside the interval where a quantity is computed."""


class ShapeError(SchlafliError, ValueError):
    """Two coefficient series do not have the same order."""


class EvaluationError(SchlafliError, ArithmeticError):
    """A sampled function returned a non-finite value."""


class QuadratureError(SchlafliError):
    """Adaptive quadrature missed its tolerance.

    The best available estimate is kept on ``estimate`` and ``abserr``.
    """

    def __init__(self, message, estimate, abserr):
        super().__init__(message)
        self.estimate = estimate
        self.abserr = abserr
