"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """Raised when arguments lie outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative or quadrature scheme misses its error target.

    Carries the best available partial result and the achieved error bound so
    callers can decide whether the answer is still usable.
    """

    def __init__(self, message, partial=None, bound=None):
        super().__init__(message)
        self.partial = partial
        self.bound = bound
